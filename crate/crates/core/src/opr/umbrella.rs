use super::{Factor, Opr};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::opr::closed_form::p_n;
use crate::scalar::Real;

/// The Lovász umbrella of `C_n` in three dimensions.
///
/// Vertex `k` gets the rank-one projector onto
/// `(cos φ, sin φ cos(kπ(n−1)/n), sin φ sin(kπ(n−1)/n))` with `cos² φ = p_n`, and the
/// handle is `(1, 0, 0)`. Consecutive vectors are orthogonal.
pub fn umbrella_opr<T: Real>(n: usize) -> Result<Opr<T>> {
    let p: T = p_n(n)?;
    let cos_phi = p.sqrt();
    let sin_phi = (T::one() - p).sqrt();
    let step = T::PI() * T::lit((n - 1) as f64) / T::lit(n as f64);
    let projectors = (0..n)
        .map(|k| {
            let angle = step * T::lit(k as f64);
            let u = vec![cos_phi, sin_phi * angle.cos(), sin_phi * angle.sin()];
            vec![Factor::Matrix(Matrix::outer(&u))]
        })
        .collect();
    Opr::new(vec!["_".into()], vec![3], projectors, vec![T::one(), T::zero(), T::zero()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::opr::closed_form::theta_closed_form_cycle;
    use crate::opr::verify_opr;

    #[test]
    fn pentagon_umbrella() {
        let opr = umbrella_opr::<f64>(5).unwrap();
        for p in opr.vertex_probabilities() {
            assert!((p - 0.4472136).abs() < 1e-7);
        }
        assert!((opr.objective() - 2.2360680).abs() < 1e-7);
    }

    #[test]
    fn consecutive_vectors_orthogonal() {
        for n in (5..=15).step_by(2) {
            let opr = umbrella_opr::<f64>(n).unwrap();
            for k in 0..n {
                let a = opr.factor(k, 0).to_matrix(3);
                let b = opr.factor((k + 1) % n, 0).to_matrix(3);
                assert!(a.matmul(&b).frobenius_norm() < 1e-12, "n = {n}, k = {k}");
            }
            let target: f64 = theta_closed_form_cycle(n).unwrap();
            assert!((opr.objective() - target).abs() < 1e-12);
            let rep = verify_opr(&Graph::cycle(n).unwrap(), &opr, 1e-12).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
    }

    #[test]
    fn broken_projector_is_reported() {
        let mut opr = umbrella_opr::<f64>(7).unwrap();
        assert!(verify_opr(&Graph::cycle(7).unwrap(), &opr, 1e-10).unwrap().pass);
        opr.set_factor(3, 0, Factor::Matrix(Matrix::identity(3).scale(0.5)));
        let rep = verify_opr(&Graph::cycle(7).unwrap(), &opr, 1e-10).unwrap();
        assert!(!rep.pass);
        assert!(rep.residuals.idempotency > 0.1);
    }
}
