//! Execution strategy for the data-parallel kernels.
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! thread pool. [`Execution::Sequential`] runs the identical kernels on the
//! calling thread, and is the only strategy when the feature is disabled.
//! Both strategies produce bit-identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Parallel,
    Sequential,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `(0..n).map(f)` collected in index order.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// `items.iter().map(f)` collected in order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Calls `f(chunk_index, chunk)` for consecutive chunks of `chunk_len`.
    pub fn for_each_chunk_mut<T, F>(self, data: &mut [T], chunk_len: usize, f: F)
    where
        T: Send,
        F: Fn(usize, &mut [T]) + Sync + Send,
    {
        let chunk_len = chunk_len.max(1);
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            data.par_chunks_mut(chunk_len)
                .enumerate()
                .for_each(|(i, c)| f(i, c));
            return;
        }
        data.chunks_mut(chunk_len)
            .enumerate()
            .for_each(|(i, c)| f(i, c));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let par = Execution::Parallel.map_range(1000, |i| (i as f64).sqrt());
        let seq = Execution::Sequential.map_range(1000, |i| (i as f64).sqrt());
        assert_eq!(par, seq);

        let mut a = vec![0usize; 103];
        let mut b = vec![0usize; 103];
        Execution::Parallel.for_each_chunk_mut(&mut a, 10, |k, c| {
            for (j, v) in c.iter_mut().enumerate() {
                *v = k * 10 + j;
            }
        });
        Execution::Sequential.for_each_chunk_mut(&mut b, 10, |k, c| {
            for (j, v) in c.iter_mut().enumerate() {
                *v = k * 10 + j;
            }
        });
        assert_eq!(a, b);
        assert_eq!(a[57], 57);
    }
}
