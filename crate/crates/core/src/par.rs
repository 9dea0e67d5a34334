//! Execution policy for embarrassingly parallel batches (ledger cells,
//! random-map censuses, density oracles). Results are always returned in
//! input order, so the policy never changes an output.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise
    /// degrades to sequential.
    #[default]
    Parallel,
}

pub fn map_vec<T, R, F>(exec: Exec, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    match exec {
        Exec::Sequential => items.into_iter().map(f).collect(),
        Exec::Parallel => parallel_map(items, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T: Send, R: Send, F: Fn(T) -> R + Sync + Send>(items: Vec<T>, f: F) -> Vec<R> {
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T: Send, R: Send, F: Fn(T) -> R + Sync + Send>(items: Vec<T>, f: F) -> Vec<R> {
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies_agree_and_keep_order() {
        let v: Vec<u64> = (0..1000).collect();
        let a = map_vec(Exec::Sequential, v.clone(), |x| x * x + 1);
        let b = map_vec(Exec::Parallel, v, |x| x * x + 1);
        assert_eq!(a, b);
        assert_eq!(a[10], 101);
    }
}
