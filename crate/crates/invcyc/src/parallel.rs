//! Data-parallel map with a sequential fallback: with the `parallel`
//! feature the sweep fans out through rayon's work-stealing pool, without
//! it the same call runs on one thread. Results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, in parallel when the `parallel` feature is on.
/// Output order matches input order, so callers stay deterministic.
pub fn maybe_par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_input_order() {
        let items: Vec<i64> = (0..1000).collect();
        let squares = maybe_par_map(&items, |&x| x * x);
        let expected: Vec<i64> = items.iter().map(|&x| x * x).collect();
        assert_eq!(squares, expected);
    }

    #[test]
    fn works_on_empty_input() {
        let empty: Vec<i64> = Vec::new();
        assert_eq!(maybe_par_map(&empty, |&x| x + 1), Vec::<i64>::new());
    }
}
