//! Singular values by one-sided (Hestenes) Jacobi rotations.
//!
//! Columns are orthogonalised pairwise until every pair is numerically
//! orthogonal; the singular values are then the column norms. The method has
//! high relative accuracy for small singular values, which the relative rank
//! threshold in [`super::operator_schmidt_rank`] relies on.

use num_complex::Complex;

use super::Matrix;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 80;

/// Singular values of `a`, sorted in non-increasing order.
///
/// Returns `min(rows, cols)` values.
pub fn singular_values<T: Real>(a: &Matrix<T>) -> Vec<T> {
    // Work on whichever orientation has fewer columns.
    let work = if a.cols() > a.rows() { a.adjoint() } else { a.clone() };
    let m = work.rows();
    let n = work.cols();
    // Column-major copy so each column is contiguous.
    let mut cols: Vec<Vec<Complex<T>>> =
        (0..n).map(|j| (0..m).map(|i| work[(i, j)]).collect()).collect();

    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm_sqr(&cols[p]);
                let beta = norm_sqr(&cols[q]);
                if alpha == T::zero() || beta == T::zero() {
                    continue;
                }
                let gamma = inner(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let two = T::one() + T::one();
                let zeta = (beta - alpha) / (two * g);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let cp = &mut left[p];
                let cq = &mut right[0];
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let xp = *x;
                    let yq = *y;
                    *x = xp * c - yq * phase.conj() * s;
                    *y = xp * phase * s + yq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<T> = cols.iter().map(|col| norm_sqr(col).sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    sv
}

fn norm_sqr<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

/// `⟨u, v⟩ = Σ conj(u_i) v_i`.
fn inner<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> Complex<T> {
    u.iter()
        .zip(v)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn diagonal_matrix_gives_sorted_absolute_entries() {
        let m = Matrix::<f64>::from_diagonal(&[
            Complex::new(-2.0, 0.0),
            Complex::new(0.0, 5.0),
            Complex::new(1.0, 0.0),
        ]);
        let sv = singular_values(&m);
        assert_relative_eq!(sv[0], 5.0);
        assert_relative_eq!(sv[1], 2.0);
        assert_relative_eq!(sv[2], 1.0);
    }

    #[test]
    fn rank_one_outer_product() {
        let u = [Complex::new(1.0, 1.0), Complex::new(0.0, -2.0), Complex::new(3.0, 0.5)];
        let v = [Complex::new(0.5, 0.0), Complex::new(-1.0, 2.0)];
        let m = Matrix::<f64>::from_fn(3, 2, |r, c| u[r] * v[c].conj());
        let sv = singular_values(&m);
        let nu: f64 = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let nv: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert_relative_eq!(sv[0], nu * nv, epsilon = 1e-12);
        assert!(sv[1] < 1e-14);
    }

    #[test]
    fn wide_matrix_uses_adjoint() {
        let m = Matrix::<f64>::from_fn(1, 3, |_, c| Complex::new(c as f64, 0.0));
        let sv = singular_values(&m);
        assert_eq!(sv.len(), 1);
        assert_relative_eq!(sv[0], 5f64.sqrt(), epsilon = 1e-14);
    }
}
