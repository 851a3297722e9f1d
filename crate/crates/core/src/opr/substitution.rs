//! Trading a monochromatic two-edge path for a two-coloured one without changing the objective.
//!
//! Around vertex `i` of a coloured cycle let edges `(i−1, i)` and `(i, i+1)` carry colour
//! `A` and `(i+1, i+2)` colour `B ≠ A`. In the factored form
//! `Π_i = Π_i^A ⊗ I_B`, `Π_{i+1} = (I − Π_i^A) ⊗ Π_{i+1}^B` (other factors shared), the pair
//! can be replaced by `Π_i' = Π_i^A ⊗ (I − Π_{i+1}^B)` and `Π_{i+1}' = I ⊗ Π_{i+1}^B`.
//! The sum `Π_i + Π_{i+1}` is unchanged, and the edge `(i, i+1)` is now orthogonal on the
//! `B` factor instead of `A`.

use super::{Factor, Opr};
use crate::error::{invalid, Result};
use crate::graph::{ordered, ColouredMultigraph};
use crate::linalg::Matrix;
use crate::scalar::Real;

/// Residual allowed when checking that an OPR already has the factored form.
pub const FORM_TOL: f64 = 1e-8;

/// Vertices and colours of a matched pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapPattern {
    pub i: usize,
    pub next: usize,
    pub a: usize,
    pub b: usize,
}

/// Substituted representation together with the multigraph it represents (edge
/// `(i, i+1)` moved from colour `A` to colour `B`).
#[derive(Debug, Clone)]
pub struct Substitution<T> {
    pub opr: Opr<T>,
    pub multigraph: ColouredMultigraph,
    pub pattern: SwapPattern,
}

/// Checks the edge pattern at `i` (indices mod `n`).
///
/// Besides the three path edges, `i` may not have `B`-edges and `i+1` may not have further
/// `A`-edges, since those factors are rewritten.
pub fn match_pattern(cm: &ColouredMultigraph, i: usize) -> Result<SwapPattern> {
    let n = cm.n();
    if n < 4 {
        return invalid(format!("the substitution needs at least 4 vertices, got {n}"));
    }
    if i >= n {
        return invalid(format!("vertex {i} outside 0..{n}"));
    }
    let prev = (i + n - 1) % n;
    let next = (i + 1) % n;
    let after = (i + 2) % n;
    let a_prev = cm.colours_between(prev, i);
    let a_next = cm.colours_between(i, next);
    let Some(&a) = a_prev.iter().find(|c| a_next.contains(c)) else {
        return invalid(format!("edges ({prev}, {i}) and ({i}, {next}) share no colour"));
    };
    let Some(&b) = cm.colours_between(next, after).iter().find(|&&c| c != a) else {
        return invalid(format!("edge ({next}, {after}) carries no colour other than {}", cm.colours()[a]));
    };
    if cm.colour_edges(b).iter().any(|&(u, v)| u == i || v == i) {
        return invalid(format!("vertex {i} has an edge of colour {}", cm.colours()[b]));
    }
    if cm.colour_edges(a).iter().any(|&(u, v)| (u == next || v == next) && (u, v) != ordered(i, next)) {
        return invalid(format!("vertex {next} has a further edge of colour {}", cm.colours()[a]));
    }
    Ok(SwapPattern { i, next, a, b })
}

/// Enlarges the two projectors at the pattern into the factored form: `Π_i^B := I`,
/// `Π_{i+1}^A := I − Π_i^A`. Both factors only grow, so the objective does not decrease,
/// and the result stays an OPR of `cm`. Factors of further parties are left alone and
/// must already agree between `i` and `i+1`.
pub fn lemma_form<T: Real>(opr: &Opr<T>, cm: &ColouredMultigraph, i: usize) -> Result<Opr<T>> {
    let p = match_pattern(cm, i)?;
    check_shapes(opr, cm)?;
    let mut out = opr.clone();
    let da = opr.dims()[p.a];
    out.set_factor(p.i, p.b, Factor::Identity);
    let comp = Matrix::identity(da).sub(&opr.factor(p.i, p.a).to_matrix(da));
    out.set_factor(p.next, p.a, as_factor(comp));
    Ok(out)
}

/// Applies the substitution; `opr` must already be in the factored form (see [`lemma_form`]).
pub fn swap_path_substitution<T: Real>(opr: &Opr<T>, cm: &ColouredMultigraph, i: usize) -> Result<Substitution<T>> {
    let p = match_pattern(cm, i)?;
    check_shapes(opr, cm)?;
    let tol = T::lit(FORM_TOL);
    let dims = opr.dims();
    let (da, db) = (dims[p.a], dims[p.b]);
    if !opr.factor(p.i, p.b).is_identity()
        && opr.factor(p.i, p.b).to_matrix(db).sub(&Matrix::identity(db)).frobenius_norm() > tol
    {
        return invalid(format!("factor {} of vertex {} is not the identity", cm.colours()[p.b], p.i));
    }
    let pa = opr.factor(p.i, p.a).to_matrix(da);
    let comp = Matrix::identity(da).sub(&pa);
    if opr.factor(p.next, p.a).to_matrix(da).sub(&comp).frobenius_norm() > tol {
        return invalid(format!(
            "factor {} of vertex {} is not the complement of vertex {}'s",
            cm.colours()[p.a],
            p.next,
            p.i
        ));
    }
    for party in 0..dims.len() {
        if party == p.a || party == p.b {
            continue;
        }
        let d = dims[party];
        let diff = opr.factor(p.i, party).to_matrix(d).sub(&opr.factor(p.next, party).to_matrix(d)).frobenius_norm();
        if diff > tol {
            return invalid(format!("vertices {} and {} differ on factor {}", p.i, p.next, cm.colours()[party]));
        }
    }

    let pb = opr.factor(p.next, p.b).to_matrix(db);
    let mut out = opr.clone();
    out.set_factor(p.i, p.b, as_factor(Matrix::identity(db).sub(&pb)));
    out.set_factor(p.next, p.a, Factor::Identity);

    let mut multigraph = cm.clone();
    multigraph.remove_edge_in_place(p.i, p.next, p.a);
    if !multigraph.has_edge(p.i, p.next, p.b) {
        multigraph.add_edge(p.i, p.next, p.b)?;
    }
    Ok(Substitution { opr: out, multigraph, pattern: p })
}

fn check_shapes<T: Real>(opr: &Opr<T>, cm: &ColouredMultigraph) -> Result<()> {
    if opr.vertex_count() != cm.n() || opr.parties().len() != cm.colour_count() {
        return invalid("OPR and multigraph shapes differ");
    }
    Ok(())
}

fn as_factor<T: Real>(m: Matrix<T>) -> Factor<T> {
    let d = m.rows();
    if m.sub(&Matrix::identity(d)).frobenius_norm() == T::zero() {
        Factor::Identity
    } else {
        Factor::Matrix(m)
    }
}
