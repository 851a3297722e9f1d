//! Orthogonal projective representations (OPRs) of graphs and coloured multigraphs.
//!
//! An OPR assigns to every vertex a tensor product of per-party projectors and carries a
//! unit "handle" vector in the product space. The objective is `Σ_i ⟨ψ|Π_i|ψ⟩`.
//! The handle is laid out row-major with party 0 as the most significant index.

pub mod closed_form;
pub mod seesaw;
pub mod substitution;
mod tensor;
mod umbrella;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{ColouredMultigraph, Graph};
use crate::linalg::{dot, norm, Matrix};
use crate::scalar::Real;

pub use tensor::apply_factor;
pub use umbrella::umbrella_opr;

/// One tensor factor of a vertex projector.
#[derive(Debug, Clone, PartialEq)]
pub enum Factor<T> {
    Identity,
    Matrix(Matrix<T>),
}

impl<T: Real> Factor<T> {
    pub fn to_matrix(&self, dim: usize) -> Matrix<T> {
        match self {
            Factor::Identity => Matrix::identity(dim),
            Factor::Matrix(m) => m.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Factor::Identity)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Opr<T> {
    parties: Vec<String>,
    dims: Vec<usize>,
    /// `projectors[vertex][party]`.
    projectors: Vec<Vec<Factor<T>>>,
    handle: Vec<T>,
}

impl<T: Real> Opr<T> {
    /// Checks shapes only; the projector and orthogonality conditions are what
    /// [`verify_opr`] measures.
    pub fn new(parties: Vec<String>, dims: Vec<usize>, projectors: Vec<Vec<Factor<T>>>, handle: Vec<T>) -> Result<Self> {
        if parties.len() != dims.len() {
            return invalid("one dimension per party is required");
        }
        if parties.is_empty() {
            return invalid("an OPR needs at least one party");
        }
        if dims.iter().any(|&d| d == 0) {
            return invalid("party dimensions must be positive");
        }
        let total: usize = dims.iter().product();
        if handle.len() != total {
            return invalid(format!("handle has length {}, product dimension is {total}", handle.len()));
        }
        for (i, row) in projectors.iter().enumerate() {
            if row.len() != dims.len() {
                return invalid(format!("vertex {i} has {} factors for {} parties", row.len(), dims.len()));
            }
            for (j, f) in row.iter().enumerate() {
                if let Factor::Matrix(m) = f {
                    if m.rows() != dims[j] || m.cols() != dims[j] {
                        return invalid(format!("vertex {i}, party {j}: factor is not {0}×{0}", dims[j]));
                    }
                }
            }
        }
        Ok(Self { parties, dims, projectors, handle })
    }

    pub fn parties(&self) -> &[String] {
        &self.parties
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn vertex_count(&self) -> usize {
        self.projectors.len()
    }

    pub fn handle(&self) -> &[T] {
        &self.handle
    }

    pub fn factor(&self, vertex: usize, party: usize) -> &Factor<T> {
        &self.projectors[vertex][party]
    }

    pub fn factors(&self, vertex: usize) -> &[Factor<T>] {
        &self.projectors[vertex]
    }

    pub fn set_factor(&mut self, vertex: usize, party: usize, factor: Factor<T>) {
        self.projectors[vertex][party] = factor;
    }

    pub fn set_handle(&mut self, handle: Vec<T>) {
        assert_eq!(handle.len(), self.total_dim(), "handle length");
        self.handle = handle;
    }

    /// `Π_i |v⟩`.
    pub fn apply_vertex(&self, vertex: usize, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (party, f) in self.projectors[vertex].iter().enumerate() {
            if let Factor::Matrix(m) = f {
                out = apply_factor(&out, &self.dims, party, m);
            }
        }
        out
    }

    /// `⟨ψ|Π_i|ψ⟩`.
    pub fn vertex_probability(&self, vertex: usize) -> T {
        dot(&self.handle, &self.apply_vertex(vertex, &self.handle))
    }

    pub fn vertex_probabilities(&self) -> Vec<T> {
        (0..self.vertex_count()).map(|i| self.vertex_probability(i)).collect()
    }

    pub fn objective(&self) -> T {
        self.vertex_probabilities().into_iter().sum()
    }

    /// The full `D × D` projector `Π_i^A ⊗ … ⊗ Π_i^N`.
    pub fn vertex_projector(&self, vertex: usize) -> Matrix<T> {
        let mut out = Matrix::identity(1);
        for (party, f) in self.projectors[vertex].iter().enumerate() {
            out = out.kron(&f.to_matrix(self.dims[party]));
        }
        out
    }

    /// Same representation with every vertex projector multiplied out into a single party.
    pub fn flattened(&self, party: &str) -> Self {
        let d = self.total_dim();
        Self {
            parties: vec![party.to_string()],
            dims: vec![d],
            projectors: (0..self.vertex_count()).map(|i| vec![Factor::Matrix(self.vertex_projector(i))]).collect(),
            handle: self.handle.clone(),
        }
    }

    pub fn cast<U: Real>(&self) -> Opr<U> {
        Opr {
            parties: self.parties.clone(),
            dims: self.dims.clone(),
            projectors: self
                .projectors
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|f| match f {
                            Factor::Identity => Factor::Identity,
                            Factor::Matrix(m) => Factor::Matrix(m.cast()),
                        })
                        .collect()
                })
                .collect(),
            handle: self.handle.iter().map(|x| U::lit(x.to_f64_lossy())).collect(),
        }
    }

    /// Nested-array JSON dump: handle plus `projectors[vertex][party]` as row-major
    /// matrices, every number printed with 17 significant digits.
    pub fn to_json_string(&self) -> String {
        let num = |x: T| format!("{:.16e}", x.to_f64_lossy());
        let vec_str = |v: &[T]| format!("[{}]", v.iter().map(|&x| num(x)).collect::<Vec<_>>().join(", "));
        let mat_str = |m: &Matrix<T>| {
            format!("[{}]", (0..m.rows()).map(|r| vec_str(m.row(r))).collect::<Vec<_>>().join(", "))
        };
        let parties = self.parties.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>().join(", ");
        let dims = self.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"parties\": [{parties}],\n"));
        out.push_str(&format!("  \"dims\": [{dims}],\n"));
        out.push_str(&format!("  \"handle\": {},\n", vec_str(&self.handle)));
        out.push_str("  \"projectors\": [\n");
        for (i, row) in self.projectors.iter().enumerate() {
            let factors: Vec<String> =
                row.iter().enumerate().map(|(p, f)| mat_str(&f.to_matrix(self.dims[p]))).collect();
            let sep = if i + 1 == self.projectors.len() { "" } else { "," };
            out.push_str(&format!("    [{}]{sep}\n", factors.join(", ")));
        }
        out.push_str("  ]\n}\n");
        out
    }
}

/// What an OPR is checked against: a colourless graph (orthogonality of the full vertex
/// projectors) or a coloured multigraph (orthogonality of the factor of each edge's colour).
#[derive(Debug, Clone, Copy)]
pub enum OprTarget<'a> {
    Graph(&'a Graph),
    Multigraph(&'a ColouredMultigraph),
}

impl<'a> From<&'a Graph> for OprTarget<'a> {
    fn from(g: &'a Graph) -> Self {
        OprTarget::Graph(g)
    }
}

impl<'a> From<&'a ColouredMultigraph> for OprTarget<'a> {
    fn from(cm: &'a ColouredMultigraph) -> Self {
        OprTarget::Multigraph(cm)
    }
}

/// Maximum violations of the OPR conditions (Frobenius norms).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub idempotency: f64,
    pub hermiticity: f64,
    pub orthogonality: f64,
    pub handle_norm: f64,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        self.idempotency.max(self.hermiticity).max(self.orthogonality).max(self.handle_norm)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub residuals: Residuals,
    pub tol: f64,
    pub pass: bool,
    /// The edge `(u, v, colour)` with the largest orthogonality residual, if any edge exists.
    pub worst_edge: Option<(usize, usize, Option<usize>)>,
}

pub fn verify_opr<'a, T: Real>(target: impl Into<OprTarget<'a>>, opr: &Opr<T>, tol: f64) -> Result<VerifyReport> {
    let target = target.into();
    let n = match target {
        OprTarget::Graph(g) => g.n(),
        OprTarget::Multigraph(cm) => cm.n(),
    };
    if n != opr.vertex_count() {
        return invalid(format!("graph has {n} vertices, OPR has {}", opr.vertex_count()));
    }
    if let OprTarget::Multigraph(cm) = target {
        if cm.colour_count() != opr.parties.len() {
            return invalid(format!("multigraph has {} colours, OPR has {} parties", cm.colour_count(), opr.parties.len()));
        }
    }

    let mut idem = 0.0f64;
    let mut herm = 0.0f64;
    for row in &opr.projectors {
        for f in row {
            if let Factor::Matrix(m) = f {
                idem = idem.max(m.idempotency_residual().to_f64_lossy());
                herm = herm.max(m.asymmetry().to_f64_lossy());
            }
        }
    }

    let mut orth = 0.0f64;
    let mut worst = None;
    match target {
        OprTarget::Graph(g) => {
            let full: Vec<Matrix<T>> = (0..n).map(|i| opr.vertex_projector(i)).collect();
            for (u, v) in g.edges() {
                let r = full[u].matmul(&full[v]).frobenius_norm().to_f64_lossy();
                if worst.is_none() || r > orth {
                    orth = orth.max(r);
                    worst = Some((u, v, None));
                }
            }
        }
        OprTarget::Multigraph(cm) => {
            for (u, v, c) in cm.edges() {
                let d = opr.dims[c];
                let r = opr.projectors[u][c]
                    .to_matrix(d)
                    .matmul(&opr.projectors[v][c].to_matrix(d))
                    .frobenius_norm()
                    .to_f64_lossy();
                if worst.is_none() || r > orth {
                    orth = orth.max(r);
                    worst = Some((u, v, Some(c)));
                }
            }
        }
    }

    let handle_norm = (norm(&opr.handle).to_f64_lossy() - 1.0).abs();
    let residuals = Residuals { idempotency: idem, hermiticity: herm, orthogonality: orth, handle_norm };
    Ok(VerifyReport { pass: residuals.max() <= tol, residuals, tol, worst_edge: worst })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qubit(v: [f64; 2]) -> Factor<f64> {
        Factor::Matrix(Matrix::outer(&v))
    }

    #[test]
    fn shape_checks() {
        let h = vec![1.0, 0.0];
        assert!(Opr::new(vec!["A".into()], vec![2], vec![vec![Factor::Identity]], h.clone()).is_ok());
        assert!(Opr::new(vec!["A".into()], vec![3], vec![vec![Factor::Identity]], h.clone()).is_err());
        assert!(Opr::<f64>::new(vec!["A".into()], vec![2], vec![vec![Factor::Matrix(Matrix::identity(3))]], h).is_err());
    }

    #[test]
    fn product_probabilities() {
        // |ψ⟩ = (|00⟩ + |11⟩)/√2, Π = |0⟩⟨0| ⊗ |0⟩⟨0| has probability 1/2.
        let s = 0.5f64.sqrt();
        let opr = Opr::new(
            vec!["A".into(), "B".into()],
            vec![2, 2],
            vec![vec![qubit([1.0, 0.0]), qubit([1.0, 0.0])], vec![qubit([1.0, 0.0]), qubit([0.0, 1.0])]],
            vec![s, 0.0, 0.0, s],
        )
        .unwrap();
        assert!((opr.vertex_probability(0) - 0.5).abs() < 1e-15);
        assert!(opr.vertex_probability(1).abs() < 1e-15);
        let full = opr.vertex_projector(0);
        assert!((full.quadratic_form(opr.handle()) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn coloured_orthogonality_uses_the_edge_colour() {
        let s = 0.5f64.sqrt();
        let cm = ColouredMultigraph::from_edges(2, &["A", "B"], [(0, 1, 1)]).unwrap();
        let opr = Opr::new(
            vec!["A".into(), "B".into()],
            vec![2, 2],
            vec![vec![qubit([1.0, 0.0]), qubit([1.0, 0.0])], vec![qubit([1.0, 0.0]), qubit([0.0, 1.0])]],
            vec![s, 0.0, 0.0, s],
        )
        .unwrap();
        assert!(verify_opr(&cm, &opr, 1e-12).unwrap().pass);
        let wrong = ColouredMultigraph::from_edges(2, &["A", "B"], [(0, 1, 0)]).unwrap();
        let rep = verify_opr(&wrong, &opr, 1e-12).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.worst_edge, Some((0, 1, Some(0))));
        assert!(verify_opr(&Graph::cycle(3).unwrap(), &opr, 1e-12).is_err());
    }
}
