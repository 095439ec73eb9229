//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] runs
//! on the rayon pool; without it every call is sequential. Results are
//! always returned in input order, so output never depends on scheduling.

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

pub fn map_range<T, F>(exec: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

pub fn map_slice<I, T, F>(exec: Execution, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    map_range(exec, items.len(), |k| f(&items[k]))
}

/// Index of the first item for which `f` returns `Some`, with its value.
/// The parallel path still reports the lowest index.
pub fn find_first<T, F>(exec: Execution, n: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().filter_map(|k| f(k).map(|v| (k, v))).min_by_key(|(k, _)| *k);
    }
    let _ = exec;
    (0..n).find_map(|k| f(k).map(|v| (k, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let a = map_range(Execution::Sequential, 100, |k| k * k);
        let b = map_range(Execution::Parallel, 100, |k| k * k);
        assert_eq!(a, b);
        let f = |k: usize| if k % 7 == 3 { Some(k) } else { None };
        assert_eq!(find_first(Execution::Parallel, 100, f), Some((3, 3)));
        assert_eq!(find_first(Execution::Sequential, 100, f), Some((3, 3)));
    }
}
