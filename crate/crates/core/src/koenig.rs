//! Inverse limits of finite sets.
//!
//! A [`LevelSystem`] is a sequence of finite sets `X_1, X_2, ...` with maps
//! `g_n: X_{n+1} -> X_n`. If every level is non-empty there is a coherent
//! thread `(x_1, x_2, ...)` with `g_n(x_{n+1}) = x_n`. It is found through the
//! stabilized images
//!
//! ```text
//! Y_n^m = (g_n ∘ ... ∘ g_{n+m-1})(X_{n+m}),     Z_n = ⋂_m Y_n^m,
//! ```
//!
//! which satisfy `g_n(Z_{n+1}) = Z_n`, so a thread can be grown one level at
//! a time without ever getting stuck.
//!
//! The infinite intersection is cut off at a horizon of `2 + Σ |X_i|` stages
//! past the requested depth, or at the last materialized level if that comes
//! first. Every `Z_n` is taken from that same deepest stage, which gives
//! `g_n(Z_{n+1}) = Z_n` exactly. Stopping at the first pair of agreeing
//! stages is not enough: a chain can stay flat for a while and then drop.

use std::collections::BTreeSet;

use thiserror::Error;

pub trait LevelSystem {
    type Item: Clone + Ord;

    /// The finite set `X_n` for `n >= 1`, or `None` past the last
    /// materialized level.
    fn level(&self, n: usize) -> Option<Vec<Self::Item>>;

    /// `g_n`, mapping an item of level `n + 1` to one of level `n`.
    fn step(&self, n: usize, item: &Self::Item) -> Self::Item;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KoenigError {
    #[error("level {0} is empty")]
    EmptyLevel(usize),
    #[error("level {0} is not materialized")]
    NotMaterialized(usize),
}

/// A coherent finite sequence `(x_1, ..., x_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thread<T> {
    items: Vec<T>,
}

impl<T: Clone + Ord> Thread<T> {
    pub fn items(&self) -> &[T] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn last(&self) -> Option<&T> {
        self.items.last()
    }

    pub fn into_items(self) -> Vec<T> {
        self.items
    }

    /// The first `n` items.
    pub fn prefix(&self, n: usize) -> Thread<T> {
        Thread {
            items: self.items[..n.min(self.items.len())].to_vec(),
        }
    }

    /// Every item lies in its level and `g_n(x_{n+1}) = x_n`.
    pub fn is_coherent<S: LevelSystem<Item = T>>(&self, sys: &S) -> bool {
        let in_levels = self.items.iter().enumerate().all(|(i, x)| {
            sys.level(i + 1)
                .is_some_and(|level| level.contains(x))
        });
        in_levels
            && self
                .items
                .windows(2)
                .enumerate()
                .all(|(i, w)| sys.step(i + 1, &w[1]) == w[0])
    }
}

/// A level system given by explicit level lists and a step function.
pub struct ExplicitLevels<T, F> {
    levels: Vec<Vec<T>>,
    step: F,
}

impl<T, F> ExplicitLevels<T, F>
where
    T: Clone + Ord,
    F: Fn(usize, &T) -> T,
{
    /// `levels[0]` is `X_1`.
    pub fn new(levels: Vec<Vec<T>>, step: F) -> Self {
        ExplicitLevels { levels, step }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

impl<T, F> LevelSystem for ExplicitLevels<T, F>
where
    T: Clone + Ord,
    F: Fn(usize, &T) -> T,
{
    type Item = T;

    fn level(&self, n: usize) -> Option<Vec<T>> {
        n.checked_sub(1).and_then(|i| self.levels.get(i)).cloned()
    }

    fn step(&self, n: usize, item: &T) -> T {
        (self.step)(n, item)
    }
}

/// Materializes levels on demand and remembers them for one computation.
struct Levels<'a, S: LevelSystem> {
    sys: &'a S,
    cache: Vec<Option<Vec<S::Item>>>,
}

impl<'a, S: LevelSystem> Levels<'a, S> {
    fn new(sys: &'a S) -> Self {
        Levels {
            sys,
            cache: vec![None],
        }
    }

    fn get(&mut self, n: usize) -> Option<&[S::Item]> {
        while self.cache.len() <= n {
            let next = self.cache.len();
            {
                let items = self.sys.level(next)?;
                self.cache.push(Some(items))
            }
        }
        self.cache[n].as_deref()
    }

    /// `Y_n^m`: the image of `X_{n+m}` pushed down to level `n`.
    fn image(&mut self, n: usize, m: usize) -> Option<BTreeSet<S::Item>> {
        let mut cur: BTreeSet<S::Item> = self.get(n + m)?.iter().cloned().collect();
        for lvl in (n..n + m).rev() {
            cur = cur.iter().map(|x| self.sys.step(lvl, x)).collect();
        }
        Some(cur)
    }
}

/// The stabilized cores `Z_1, ..., Z_n` (returned as `cores[0] = Z_1`).
pub fn stabilized_cores<S: LevelSystem>(
    sys: &S,
    n: usize,
) -> Result<Vec<BTreeSet<S::Item>>, KoenigError> {
    let mut levels = Levels::new(sys);
    let mut size = 0;
    for i in 1..=n {
        let lvl = levels.get(i).ok_or(KoenigError::NotMaterialized(i))?;
        if lvl.is_empty() {
            return Err(KoenigError::EmptyLevel(i));
        }
        size += lvl.len();
    }
    let horizon = 2 + size;
    let mut top = n;
    for m in 1..=horizon {
        match levels.get(n + m) {
            None => break,
            Some([]) => return Err(KoenigError::EmptyLevel(n + m)),
            Some(_) => top = n + m,
        }
    }
    Ok((1..=n)
        .map(|i| levels.image(i, top - i).expect("materialized"))
        .collect())
}

/// A coherent thread `(x_1, ..., x_n)` built level by level from the cores,
/// always taking the least admissible item.
pub fn extract_thread<S: LevelSystem>(sys: &S, n: usize) -> Result<Thread<S::Item>, KoenigError> {
    if n == 0 {
        return Ok(Thread { items: Vec::new() });
    }
    let cores = stabilized_cores(sys, n)?;
    let mut items: Vec<S::Item> = Vec::with_capacity(n);
    let first = cores[0].iter().next().cloned().ok_or(KoenigError::EmptyLevel(1))?;
    items.push(first);
    for m in 1..n {
        let prev = &items[m - 1];
        let next = cores[m]
            .iter()
            .find(|y| &sys.step(m, y) == prev)
            .cloned()
            .ok_or(KoenigError::EmptyLevel(m + 1))?;
        items.push(next);
    }
    Ok(Thread { items })
}

/// Least `n <= cap` whose level is empty.
pub fn first_empty_level<S: LevelSystem>(sys: &S, cap: usize) -> Option<usize> {
    (1..=cap)
        .map_while(|n| sys.level(n).map(|l| (n, l.is_empty())))
        .find(|&(_, empty)| empty)
        .map(|(n, _)| n)
}
