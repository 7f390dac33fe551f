//! Small dense linear-algebra helpers shared by the geometry modules.

use nalgebra::{DMatrix, DVector};

/// Orthonormal basis of the span of `vectors` by modified Gram–Schmidt with
/// one reorthogonalization pass. Vectors whose residual falls below
/// `tol * scale` are treated as dependent, where `scale` is the largest input
/// norm.
pub fn orthonormal_basis<'a, I>(vectors: I, tol: f64) -> Vec<DVector<f64>>
where
    I: IntoIterator<Item = &'a DVector<f64>>,
{
    let vectors: Vec<&DVector<f64>> = vectors.into_iter().collect();
    let scale = vectors.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut basis: Vec<DVector<f64>> = Vec::new();
    if scale == 0.0 {
        return basis;
    }
    // Greedy pivoting: repeatedly take the input with the largest residual.
    let mut residuals: Vec<DVector<f64>> = vectors.iter().map(|v| (*v).clone()).collect();
    loop {
        let (best, best_norm) = residuals
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.norm()))
            .fold((usize::MAX, 0.0), |acc, (i, n)| if n > acc.1 { (i, n) } else { acc });
        if best == usize::MAX || best_norm <= tol * scale {
            break;
        }
        let mut q = residuals[best].clone();
        for b in &basis {
            let c = b.dot(&q);
            q.axpy(-c, b, 1.0);
        }
        let qn = q.norm();
        if qn <= tol * scale {
            residuals[best].fill(0.0);
            continue;
        }
        q /= qn;
        for r in residuals.iter_mut() {
            let c = q.dot(r);
            r.axpy(-c, &q, 1.0);
        }
        basis.push(q);
        if basis.len() == vectors[0].len() {
            break;
        }
    }
    basis
}

/// Orthonormal basis of the direction space of the affine hull of `points`.
pub fn affine_basis<'a, I>(points: I, tol: f64) -> Vec<DVector<f64>>
where
    I: IntoIterator<Item = &'a DVector<f64>>,
{
    let mut it = points.into_iter();
    let Some(first) = it.next() else {
        return Vec::new();
    };
    let diffs: Vec<DVector<f64>> = it.map(|p| p - first).collect();
    orthonormal_basis(diffs.iter(), tol)
}

/// Euclidean distance from `x` to the affine space `origin + span(basis)`,
/// `basis` orthonormal.
pub fn distance_to_affine(x: &DVector<f64>, origin: &DVector<f64>, basis: &[DVector<f64>]) -> f64 {
    let mut r = x - origin;
    for b in basis {
        let c = b.dot(&r);
        r.axpy(-c, b, 1.0);
    }
    r.norm()
}

/// `m^p` for a symmetric positive definite matrix via its eigendecomposition.
pub fn spd_power(m: &DMatrix<f64>, p: f64) -> DMatrix<f64> {
    let sym = (m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.max(0.0).powf(p)));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}

/// Matrix whose columns are `vectors`.
pub fn columns(vectors: &[DVector<f64>], rows: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(rows, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Lexicographic k-subsets of `0..n`.
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_count_matches_binomial() {
        for n in 0..8 {
            for k in 0..=n {
                assert_eq!(Combinations::new(n, k).count() as f64, binomial(n, k));
            }
        }
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn basis_drops_dependent_vectors() {
        let v = [
            DVector::from_vec(vec![1.0, 1.0, 0.0]),
            DVector::from_vec(vec![2.0, 2.0, 0.0]),
            DVector::from_vec(vec![0.0, 1.0, 0.0]),
        ];
        let b = orthonormal_basis(v.iter(), 1e-12);
        assert_eq!(b.len(), 2);
        assert!((b[0].dot(&b[1])).abs() < 1e-14);
    }

    #[test]
    fn spd_power_inverts_square_root() {
        let m = DMatrix::from_row_slice(2, 2, &[4.0, 1.0, 1.0, 3.0]);
        let r = spd_power(&m, 0.5);
        assert!(((&r * &r) - &m).norm() < 1e-12);
        let ri = spd_power(&m, -0.5);
        assert!((&r * &ri - DMatrix::identity(2, 2)).norm() < 1e-12);
    }
}
