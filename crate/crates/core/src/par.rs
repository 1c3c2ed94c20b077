//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the `Parallel` strategy runs on the
//! rayon pool; without it both strategies run sequentially.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Returns the first index in `0..n` (in index order) for which `f` yields `Some`.
pub fn find_first<T, F>(exec: Execution, n: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().find_map_first(&f);
    }
    let _ = exec;
    (0..n).find_map(f)
}

/// Whether `f` holds for every index in `0..n`.
pub fn all<F>(exec: Execution, n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().all(&f);
    }
    let _ = exec;
    (0..n).all(f)
}

/// Maps `f` over a slice preserving order.
pub fn map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(&f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Counts indices in `0..n` satisfying `f`.
pub fn count<F>(exec: Execution, n: usize, f: F) -> usize
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().filter(|&i| f(i)).count();
    }
    let _ = exec;
    (0..n).filter(|&i| f(i)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(find_first(exec, 1000, |i| (i * i > 500).then_some(i)), Some(23));
            assert!(all(exec, 100, |i| i < 100));
            assert_eq!(count(exec, 100, |i| i % 3 == 0), 34);
            assert_eq!(map(exec, &[1, 2, 3], |x| x * 2), vec![2, 4, 6]);
        }
    }
}
