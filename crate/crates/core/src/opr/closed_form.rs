//! Closed-form values for odd cycles and their complements.

use crate::error::{invalid, Result};
use crate::scalar::Real;

fn check_odd_cycle(n: usize) -> Result<()> {
    if n < 5 || n % 2 == 0 {
        return invalid(format!("expected an odd cycle length ≥ 5, got {n}"));
    }
    Ok(())
}

fn cos_pi_over<T: Real>(k: usize) -> T {
    (T::PI() / T::lit(k as f64)).cos()
}

/// Lovász number of the odd cycle: `n cos(π/n) / (1 + cos(π/n))`.
pub fn theta_closed_form_cycle<T: Real>(n: usize) -> Result<T> {
    check_odd_cycle(n)?;
    let c = cos_pi_over::<T>(n);
    Ok(T::lit(n as f64) * c / (T::one() + c))
}

/// Quantum maximum of the odd cycle in bipartite Bell scenarios (the chained inequality):
/// `1/2 + (n−1)/4 · (1 + cos(π/(n−1)))`.
pub fn mb_cycle<T: Real>(n: usize) -> Result<T> {
    check_odd_cycle(n)?;
    let c = cos_pi_over::<T>(n - 1);
    Ok(T::lit(0.5) + T::lit((n - 1) as f64 / 4.0) * (T::one() + c))
}

/// Coloured Lovász number of a two-coloured odd cycle with `t` monochromatic paths of
/// two edges and all other runs single edges: `t/2 + (n−t)/4 · (1 + cos(π/(n−t)))`.
pub fn ctheta_tpath<T: Real>(n: usize, t: usize) -> Result<T> {
    if n % 2 == 0 || t % 2 == 0 || t == 0 || t >= n || n - t < 4 {
        return invalid(format!("t-path formula needs odd n, odd t ≥ 1 and n − t ≥ 4; got n = {n}, t = {t}"));
    }
    let m = n - t;
    Ok(T::lit(t as f64 / 2.0) + T::lit(m as f64 / 4.0) * (T::one() + cos_pi_over::<T>(m)))
}

/// Per-vertex probability of every Lovász-optimal representation of `C_n`:
/// `cos(π/n) / (1 + cos(π/n))`.
pub fn p_n<T: Real>(n: usize) -> Result<T> {
    check_odd_cycle(n)?;
    let c = cos_pi_over::<T>(n);
    Ok(c / (T::one() + c))
}

/// Lovász number of the odd antihole, `n / ϑ(C_n) = 1 + 1/cos(π/n)` (vertex-transitive duality).
pub fn theta_closed_form_antihole<T: Real>(n: usize) -> Result<T> {
    Ok(T::lit(n as f64) / theta_closed_form_cycle::<T>(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_lengths() {
        assert!(theta_closed_form_cycle::<f64>(4).is_err());
        assert!(mb_cycle::<f64>(3).is_err());
        assert!(p_n::<f64>(8).is_err());
        assert!(ctheta_tpath::<f64>(7, 2).is_err());
        assert!(ctheta_tpath::<f64>(5, 3).is_err());
        assert!(ctheta_tpath::<f64>(8, 1).is_err());
    }

    #[test]
    fn reference_values() {
        assert!((theta_closed_form_cycle::<f64>(5).unwrap() - 5f64.sqrt()).abs() < 1e-14);
        assert!((theta_closed_form_cycle::<f64>(7).unwrap() - 3.3176699).abs() < 3e-6);
        assert!((theta_closed_form_cycle::<f64>(9).unwrap() - 4.3601).abs() < 1e-3);
        assert!((mb_cycle::<f64>(5).unwrap() - 2.2071068).abs() < 1e-7);
        assert!((mb_cycle::<f64>(7).unwrap() - 3.2990381).abs() < 1e-7);
        assert!((mb_cycle::<f64>(9).unwrap() - 4.3477591).abs() < 1e-7);
        assert!((ctheta_tpath::<f64>(7, 3).unwrap() - 3.2071068).abs() < 1e-7);
        assert!((p_n::<f64>(5).unwrap() - 1.0 / 5f64.sqrt()).abs() < 1e-15);
        assert!((theta_closed_form_antihole::<f64>(7).unwrap() - 2.1099162).abs() < 1e-7);
    }

    #[test]
    fn identities() {
        for n in (5..=21).step_by(2) {
            let p: f64 = p_n(n).unwrap();
            assert!(p < 0.5);
            assert!((n as f64 * p - theta_closed_form_cycle::<f64>(n).unwrap()).abs() < 1e-13);
            assert!((ctheta_tpath::<f64>(n, 1).unwrap() - mb_cycle::<f64>(n).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn single_long_path_maximises_t_formula() {
        for n in (5..=15).step_by(2) {
            let best = (1..n)
                .step_by(2)
                .filter(|&t| n - t >= 4)
                .max_by(|&a, &b| ctheta_tpath::<f64>(n, a).unwrap().total_cmp(&ctheta_tpath::<f64>(n, b).unwrap()))
                .unwrap();
            assert_eq!(best, 1, "n = {n}");
        }
    }

    #[test]
    fn single_precision_is_close() {
        let a: f32 = theta_closed_form_cycle(7).unwrap();
        let b: f64 = theta_closed_form_cycle(7).unwrap();
        assert!((a as f64 - b).abs() < 1e-5);
    }
}
