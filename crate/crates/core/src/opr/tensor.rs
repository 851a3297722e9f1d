use crate::linalg::Matrix;
use crate::scalar::Real;

/// Stride of `party`'s index in the row-major product layout.
pub(crate) fn stride(dims: &[usize], party: usize) -> usize {
    dims[party + 1..].iter().product()
}

/// `(I ⊗ … ⊗ M ⊗ … ⊗ I) v` with `M` acting on `party`'s tensor slot.
pub fn apply_factor<T: Real>(v: &[T], dims: &[usize], party: usize, m: &Matrix<T>) -> Vec<T> {
    let d = dims[party];
    let inner = stride(dims, party);
    let outer = v.len() / (d * inner);
    let mut out = vec![T::zero(); v.len()];
    for o in 0..outer {
        let base = o * d * inner;
        for a in 0..d {
            for b in 0..d {
                let coef = m[(a, b)];
                if coef == T::zero() {
                    continue;
                }
                let src = base + b * inner;
                let dst = base + a * inner;
                for r in 0..inner {
                    out[dst + r] = out[dst + r] + coef * v[src + r];
                }
            }
        }
    }
    out
}
