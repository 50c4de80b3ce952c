/// Maps work items either on the calling thread or on a dedicated rayon
/// pool. Output order always matches input order.
pub enum Executor {
    Sequential,
    #[cfg(feature = "parallel")]
    Pool(rayon::ThreadPool),
}

impl Executor {
    /// `jobs == 1` runs sequentially; `0` uses every available core. Without
    /// the `parallel` feature the executor is always sequential.
    pub fn new(jobs: usize) -> Self {
        #[cfg(feature = "parallel")]
        if jobs != 1 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                return Executor::Pool(pool);
            }
        }
        let _ = jobs;
        Executor::Sequential
    }

    pub fn is_parallel(&self) -> bool {
        !matches!(self, Executor::Sequential)
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Executor::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Executor::Pool(pool) => {
                use rayon::prelude::*;
                pool.install(|| items.par_iter().map(f).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u32> = (0..1000).collect();
        for jobs in [1, 2, 0] {
            let out = Executor::new(jobs).map(&items, |x| x * 3);
            assert_eq!(out, items.iter().map(|x| x * 3).collect::<Vec<_>>());
        }
    }
}
