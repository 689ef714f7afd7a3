use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpsError {
    #[error("period must be positive")]
    ZeroPeriod,
    #[error("residue {residue} is not below the period {period}")]
    ResidueOutOfRange { residue: u64, period: u64 },
    #[error("exception {exception} is not below the threshold {threshold}")]
    ExceptionAboveThreshold { exception: u64, threshold: u64 },
}

/// A set of naturals that is periodic from some point on.
///
/// Below `threshold` membership is given by `exceptions`; from `threshold` on
/// `l` is a member iff `l mod period` is one of the `residues`. Values are
/// always canonical (least period, then least threshold), so structural
/// equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicSet {
    exceptions: BTreeSet<u64>,
    threshold: u64,
    period: u64,
    residues: BTreeSet<u64>,
}

impl EventuallyPeriodicSet {
    pub fn new(
        exceptions: BTreeSet<u64>,
        threshold: u64,
        period: u64,
        residues: BTreeSet<u64>,
    ) -> Result<Self, EpsError> {
        if period == 0 {
            return Err(EpsError::ZeroPeriod);
        }
        if let Some(&residue) = residues.iter().find(|&&r| r >= period) {
            return Err(EpsError::ResidueOutOfRange { residue, period });
        }
        if let Some(&exception) = exceptions.iter().find(|&&e| e >= threshold) {
            return Err(EpsError::ExceptionAboveThreshold {
                exception,
                threshold,
            });
        }
        let mut s = EventuallyPeriodicSet {
            exceptions,
            threshold,
            period,
            residues,
        };
        s.canonicalize();
        Ok(s)
    }

    /// The set described by `member` below `threshold` and by the window
    /// `[threshold, threshold + period)` repeated forever above it.
    pub fn from_fn(threshold: u64, period: u64, member: impl Fn(u64) -> bool) -> Self {
        assert!(period > 0, "period must be positive");
        let exceptions = (0..threshold).filter(|&l| member(l)).collect();
        let residues = (threshold..threshold + period)
            .filter(|&l| member(l))
            .map(|l| l % period)
            .collect();
        let mut s = EventuallyPeriodicSet {
            exceptions,
            threshold,
            period,
            residues,
        };
        s.canonicalize();
        s
    }

    pub fn empty() -> Self {
        Self::from_fn(0, 1, |_| false)
    }

    /// `{l : l >= lo}`
    pub fn at_least(lo: u64) -> Self {
        Self::from_fn(lo, 1, |l| l >= lo)
    }

    /// `{l : lo <= l <= hi}` (empty when `hi < lo`).
    pub fn interval(lo: u64, hi: u64) -> Self {
        if hi < lo {
            return Self::empty();
        }
        Self::from_fn(hi + 1, 1, |l| (lo..=hi).contains(&l))
    }

    pub fn finite(items: impl IntoIterator<Item = u64>) -> Self {
        let items: BTreeSet<u64> = items.into_iter().collect();
        let top = items.iter().next_back().map_or(0, |m| m + 1);
        Self::from_fn(top, 1, |l| items.contains(&l))
    }

    pub fn contains(&self, l: u64) -> bool {
        if l < self.threshold {
            self.exceptions.contains(&l)
        } else {
            self.residues.contains(&(l % self.period))
        }
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn exceptions(&self) -> &BTreeSet<u64> {
        &self.exceptions
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.exceptions.is_empty()
    }

    /// Largest member of a finite set.
    pub fn max(&self) -> Option<u64> {
        if self.is_finite() {
            self.exceptions.iter().next_back().copied()
        } else {
            None
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let period = lcm(self.period, other.period);
        let threshold = self.threshold.max(other.threshold);
        Self::from_fn(threshold, period, |l| op(self.contains(l), other.contains(l)))
    }

    fn canonicalize(&mut self) {
        // least period: the smallest divisor d for which the residue pattern
        // repeats with shift d
        let p = self.period;
        let d = (1..=p)
            .filter(|d| p.is_multiple_of(*d))
            .find(|&d| {
                (0..p).all(|r| self.residues.contains(&r) == self.residues.contains(&((r + d) % p)))
            })
            .unwrap_or(p);
        if d != p {
            self.residues = self.residues.iter().map(|r| r % d).collect();
            self.period = d;
        }
        // least threshold
        while self.threshold > 0 {
            let l = self.threshold - 1;
            let periodic = self.residues.contains(&(l % self.period));
            if self.exceptions.contains(&l) != periodic {
                break;
            }
            self.exceptions.remove(&l);
            self.threshold = l;
        }
    }
}

impl fmt::Display for EventuallyPeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| {
            s.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
        };
        match (self.exceptions.is_empty(), self.residues.is_empty()) {
            (true, true) => f.write_str("{}"),
            (false, true) => write!(f, "{{{}}}", list(&self.exceptions)),
            (ex, false) => {
                if !ex {
                    write!(f, "{{{}}} ∪ ", list(&self.exceptions))?;
                }
                if self.period == 1 {
                    write!(f, "{{l ≥ {}}}", self.threshold)
                } else {
                    write!(
                        f,
                        "{{l ≥ {} : l mod {} ∈ {{{}}}}}",
                        self.threshold,
                        self.period,
                        list(&self.residues)
                    )
                }
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn membership_examples() {
        let all = EventuallyPeriodicSet::new(BTreeSet::new(), 1, 1, BTreeSet::from([0])).unwrap();
        assert!(all.contains(7));
        assert!(!all.contains(0));
        let small = EventuallyPeriodicSet::new(BTreeSet::from([1, 2]), 3, 1, BTreeSet::new()).unwrap();
        assert!(small.contains(2));
        assert!(!small.contains(5));
        assert_eq!(small.max(), Some(2));
    }

    #[test]
    fn canonical_forms() {
        // period 4 pattern {0, 2} is really period 2
        let s = EventuallyPeriodicSet::new(BTreeSet::from([0]), 2, 4, BTreeSet::from([0, 2])).unwrap();
        assert_eq!(s.period(), 2);
        assert_eq!(s.threshold(), 0);
        assert!(s.exceptions().is_empty());
        assert_eq!(s, EventuallyPeriodicSet::from_fn(0, 2, |l| l % 2 == 0));
        assert_eq!(EventuallyPeriodicSet::at_least(1).to_string(), "{l ≥ 1}");
        assert_eq!(EventuallyPeriodicSet::interval(1, 2).to_string(), "{1, 2}");
    }

    #[test]
    fn invalid_parts() {
        assert_eq!(
            EventuallyPeriodicSet::new(BTreeSet::new(), 0, 0, BTreeSet::new()),
            Err(EpsError::ZeroPeriod)
        );
        assert!(EventuallyPeriodicSet::new(BTreeSet::new(), 0, 2, BTreeSet::from([2])).is_err());
        assert!(EventuallyPeriodicSet::new(BTreeSet::from([5]), 3, 1, BTreeSet::new()).is_err());
    }

    fn arb_set() -> impl Strategy<Value = EventuallyPeriodicSet> {
        (0u64..12, 1u64..7, any::<u64>(), any::<u64>()).prop_map(|(t, p, ex, res)| {
            EventuallyPeriodicSet::from_fn(t, p, |l| {
                if l < t {
                    ex >> (l % 64) & 1 == 1
                } else {
                    res >> (l % p) & 1 == 1
                }
            })
        })
    }

    proptest! {
        #[test]
        fn union_and_intersection_match_pointwise(a in arb_set(), b in arb_set()) {
            let u = a.union(&b);
            let i = a.intersection(&b);
            for l in 0..=100 {
                prop_assert_eq!(u.contains(l), a.contains(l) || b.contains(l));
                prop_assert_eq!(i.contains(l), a.contains(l) && b.contains(l));
            }
        }

        #[test]
        fn canonical_form_is_unique(a in arb_set(), shift in 0u64..5, mult in 1u64..4) {
            // re-describe the same set with a larger threshold and period
            let t = a.threshold() + shift;
            let p = a.period() * mult;
            let b = EventuallyPeriodicSet::from_fn(t, p, |l| a.contains(l));
            prop_assert_eq!(a, b);
        }
    }
}
