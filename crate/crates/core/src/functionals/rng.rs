use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Samples per independently seeded block.
pub const BLOCK: usize = 4096;

/// One reproducible random stream: ChaCha8 keyed by `seed`, positioned on
/// stream `id`.
pub struct Stream {
    rng: ChaCha8Rng,
}

impl Stream {
    pub fn new(seed: u64, id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(id);
        Self { rng }
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random()
    }

    pub fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn fill_gaussian(&mut self, out: &mut [f64]) {
        for x in out {
            *x = self.gaussian();
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
}

/// Running mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Moments {
    pub count: usize,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let d = other.mean - self.mean;
        let w = other.count as f64 / count as f64;
        Moments { count, mean: self.mean + d * w, m2: self.m2 + other.m2 + d * d * self.count as f64 * w }
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.m2.max(0.0) / (self.count - 1) as f64 / self.count as f64).sqrt()
    }
}

/// Evaluates `f` on `samples` draws split into blocks of [`BLOCK`]; block `i`
/// runs on `Stream::new(seed, i)`. Blocks are combined in index order.
pub(crate) fn sample_moments<F>(samples: usize, seed: u64, f: F) -> Moments
where
    F: Fn(&mut Stream) -> f64 + Sync,
{
    let blocks = samples.div_ceil(BLOCK);
    let parts: Vec<Moments> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut s = Stream::new(seed, b as u64);
            let mut m = Moments::default();
            for _ in 0..BLOCK.min(samples - b * BLOCK) {
                m.push(f(&mut s));
            }
            m
        })
        .collect();
    parts.into_iter().fold(Moments::default(), Moments::merge)
}

/// Like [`sample_moments`] but `f` returns several statistics per draw.
pub(crate) fn sample_moments_vec<F>(samples: usize, seed: u64, width: usize, f: F) -> Vec<Moments>
where
    F: Fn(&mut Stream, &mut [f64]) + Sync,
{
    let blocks = samples.div_ceil(BLOCK);
    let parts: Vec<Vec<Moments>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut s = Stream::new(seed, b as u64);
            let mut ms = vec![Moments::default(); width];
            let mut buf = vec![0.0; width];
            for _ in 0..BLOCK.min(samples - b * BLOCK) {
                f(&mut s, &mut buf);
                for (m, &x) in ms.iter_mut().zip(&buf) {
                    m.push(x);
                }
            }
            ms
        })
        .collect();
    let mut acc = vec![Moments::default(); width];
    for p in parts {
        for (a, m) in acc.iter_mut().zip(p) {
            *a = a.merge(m);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_distinct_and_reproducible() {
        let a: Vec<u64> = (0..4).map(|_| Stream::new(7, 0).next_u64()).collect();
        assert!(a.iter().all(|&x| x == a[0]));
        assert_ne!(Stream::new(7, 0).next_u64(), Stream::new(7, 1).next_u64());
        assert_ne!(Stream::new(7, 0).next_u64(), Stream::new(8, 0).next_u64());
    }

    #[test]
    fn gaussian_moments() {
        let m = sample_moments(400_000, 3, |s| s.gaussian());
        assert!(m.mean.abs() < 5.0 * m.std_error());
        let v = sample_moments(400_000, 3, |s| s.gaussian().powi(2));
        assert!((v.mean - 1.0).abs() < 5.0 * v.std_error());
    }

    #[test]
    fn merged_moments_match_direct() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let mut all = Moments::default();
        xs.iter().for_each(|&x| all.push(x));
        let (mut a, mut b) = (Moments::default(), Moments::default());
        xs[..313].iter().for_each(|&x| a.push(x));
        xs[313..].iter().for_each(|&x| b.push(x));
        let m = a.merge(b);
        assert!((m.mean - all.mean).abs() < 1e-12 && (m.m2 - all.m2).abs() < 1e-8);
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let f = |s: &mut Stream| s.gaussian().exp();
        let a = sample_moments(50_000, 11, f);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| sample_moments(50_000, 11, f));
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.m2.to_bits(), b.m2.to_bits());
    }
}
