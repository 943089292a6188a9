//! Data-parallel helpers. With the `parallel` feature these dispatch to rayon
//! when asked; without it, [`Parallelism::Parallel`] quietly runs
//! sequentially. Results never depend on the mode.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    #[default]
    Sequential,
    Parallel,
}

impl Parallelism {
    pub fn from_flag(parallel: bool) -> Self {
        if parallel {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }

    /// Whether work actually fans out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// Order-preserving map.
pub fn map<T, R, F>(items: &[T], mode: Parallelism, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == Parallelism::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Whether `f` holds for some value in `range`.
pub fn any<F>(range: Range<u64>, mode: Parallelism, f: F) -> bool
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == Parallelism::Parallel {
        use rayon::prelude::*;
        return range.into_par_iter().any(f);
    }
    let _ = mode;
    range.into_iter().any(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let sq = |x: &u64| x * x;
        assert_eq!(
            map(&xs, Parallelism::Sequential, sq),
            map(&xs, Parallelism::Parallel, sq)
        );
        for mode in [Parallelism::Sequential, Parallelism::Parallel] {
            assert!(any(0..500, mode, |x| x == 377));
            assert!(!any(0..500, mode, |x| x == 900));
        }
    }
}
