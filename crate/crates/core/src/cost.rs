use core::fmt;

/// Edit cost: a nonnegative count or infinity.
///
/// Arithmetic saturates, so infinity is absorbing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cost(u32);

impl Cost {
    pub const ZERO: Cost = Cost(0);
    pub const INFINITE: Cost = Cost(u32::MAX);

    pub fn finite(n: u32) -> Cost {
        assert!(n < u32::MAX, "cost overflow");
        Cost(n)
    }

    pub fn is_finite(self) -> bool {
        self.0 != u32::MAX
    }

    pub fn value(self) -> Option<u32> {
        self.is_finite().then_some(self.0)
    }

    /// Adds `n`, staying infinite when already infinite.
    pub fn plus(self, n: u32) -> Cost {
        if !self.is_finite() {
            return self;
        }
        Cost(self.0.saturating_add(n))
    }

    pub fn within(self, budget: u32) -> bool {
        self.is_finite() && self.0 <= budget
    }
}

impl From<u32> for Cost {
    fn from(n: u32) -> Cost {
        Cost::finite(n)
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("∞"),
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
