//! See-saw (alternating) maximisation of `Σ_i ⟨ψ|Π_i|ψ⟩` over representations.
//!
//! One sweep updates every `(vertex, party)` factor in round-robin order and then the
//! handle. A factor update is exact for its own term: with everything else fixed, the
//! term is `Tr(Π T)` for a PSD operator `T` obtained by contracting the handle with the
//! vertex's other factors, and the best projector orthogonal to the colour-neighbours'
//! factors is the support of `P T P`, `P` being the projector onto the complement of the
//! neighbours' ranges. The handle update takes the top eigenvector of `Σ_i Π_i`.
//! Both steps are monotone, so every restart produces a non-decreasing objective and ends
//! at a feasible representation whose value is a lower bound.
//!
//! Internally factors are kept as orthonormal bases of their ranges; no factor ever needs
//! more than a thin Gram-Schmidt and a small Gram-matrix eigendecomposition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{verify_opr, Factor, Opr, Residuals};
use crate::error::{invalid, Error, Result};
use crate::graph::{ColouredMultigraph, Graph, SIMPLE_COLOUR};
use crate::linalg::{dot, symmetric_eigen, Matrix};
use crate::scalar::Real;

pub const DEFAULT_MAX_PRODUCT_DIM: usize = 256;
pub const MAX_DIM_ENV: &str = "EXGRAPH_MAX_DIM";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeesawParams {
    pub restarts: usize,
    pub max_iters: usize,
    /// A restart is converged once a sweep improves the objective by less than this.
    pub tol: f64,
    pub seed: u64,
    /// Eigenvalues of the restricted operator above this enter the new factor.
    pub rank_eps: f64,
    pub max_product_dim: usize,
    /// Rerun once with every party dimension increased by one when the best value is
    /// reached by a single restart only (coloured runs).
    pub dimension_retry: bool,
    /// Two restart values closer than this count as the same optimum.
    pub agreement_tol: f64,
    /// Penalty weight of the first annealing level; `0` skips annealing.
    pub penalty_start: f64,
    pub penalty_growth: f64,
    pub penalty_max: f64,
    /// Sweep limit per annealing level.
    pub penalty_sweeps: usize,
}

impl Default for SeesawParams {
    fn default() -> Self {
        Self {
            restarts: 20,
            max_iters: 5000,
            tol: 1e-9,
            seed: 0,
            rank_eps: 1e-12,
            max_product_dim: DEFAULT_MAX_PRODUCT_DIM,
            dimension_retry: false,
            agreement_tol: 1e-4,
            penalty_start: 5.0,
            penalty_growth: 4.0,
            penalty_max: 1e6,
            penalty_sweeps: 200,
        }
    }
}

impl SeesawParams {
    /// Defaults with the product-dimension budget taken from `EXGRAPH_MAX_DIM` when set.
    pub fn from_env() -> Result<Self> {
        let mut p = Self::default();
        if let Ok(s) = std::env::var(MAX_DIM_ENV) {
            p.max_product_dim = s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{MAX_DIM_ENV}={s:?} is not a positive integer")))?;
        }
        Ok(p)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeesawReport {
    /// Best objective over restarts; equals the sum of `vertex_probabilities`.
    pub value: f64,
    pub vertex_probabilities: Vec<f64>,
    /// Whether the best restart met the convergence tolerance.
    pub converged: bool,
    pub restarts_used: usize,
    pub converged_restarts: usize,
    pub best_restart: usize,
    /// Sweeps performed by the best restart.
    pub iterations: usize,
    pub total_iterations: usize,
    pub restart_values: Vec<f64>,
    /// Number of update steps that lowered the objective by more than rounding.
    pub monotone_violations: usize,
    /// Factor updates discarded because they would have lowered the objective. This
    /// happens when neighbouring ranges nearly coincide and the current factor is
    /// orthogonal to them only up to rounding.
    #[serde(default)]
    pub rejected_steps: usize,
    pub residuals: Residuals,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub escalated: bool,
}

impl SeesawReport {
    /// Restarts whose value is within `tol` of the best.
    pub fn agreeing_restarts(&self, tol: f64) -> usize {
        self.restart_values.iter().filter(|&&v| v >= self.value - tol).count()
    }
}

#[derive(Debug, Clone)]
pub struct SeesawOutcome<T> {
    pub report: SeesawReport,
    pub opr: Opr<T>,
}

/// Lower bound on the Lovász number of `g` from a single-party see-saw in dimension `dim`
/// (default `n`).
pub fn theta_seesaw<T: Real>(g: &Graph, dim: Option<usize>, params: &SeesawParams) -> Result<SeesawOutcome<T>> {
    if g.n() == 0 {
        return invalid("the graph has no vertices");
    }
    let dim = dim.unwrap_or(g.n());
    let cm = ColouredMultigraph::from_graph(g, SIMPLE_COLOUR);
    let mut p = *params;
    p.dimension_retry = false;
    ctheta_seesaw(&cm, &[dim], &p)
}

/// Lower bound on the factor-constrained Lovász number of `cm` with local dimensions `dims`
/// (one per colour, in colour order).
pub fn ctheta_seesaw<T: Real>(cm: &ColouredMultigraph, dims: &[usize], params: &SeesawParams) -> Result<SeesawOutcome<T>> {
    let first = run_restarts(cm, dims, params, None)?;
    if !params.dimension_retry || first.report.agreeing_restarts(params.agreement_tol) >= 2 {
        return Ok(first);
    }
    let bigger: Vec<usize> = dims.iter().map(|d| d + 1).collect();
    if bigger.iter().product::<usize>() > params.max_product_dim {
        return Ok(first);
    }
    let mut second = run_restarts(cm, &bigger, params, None)?;
    if second.report.value > first.report.value {
        second.report.escalated = true;
        Ok(second)
    } else {
        Ok(first)
    }
}

/// See-saw polishing started from `start` (which must be an OPR of `cm`) in addition to
/// `params.restarts` random restarts; the warm start counts as restart 0.
pub fn ctheta_seesaw_from<T: Real>(cm: &ColouredMultigraph, start: &Opr<T>, params: &SeesawParams) -> Result<SeesawOutcome<T>> {
    let dims = start.dims().to_vec();
    run_restarts(cm, &dims, params, Some(start))
}

fn run_restarts<T: Real>(
    cm: &ColouredMultigraph,
    dims: &[usize],
    params: &SeesawParams,
    warm: Option<&Opr<T>>,
) -> Result<SeesawOutcome<T>> {
    if dims.len() != cm.colour_count() {
        return invalid(format!("{} dimensions given for {} colours", dims.len(), cm.colour_count()));
    }
    if dims.iter().any(|&d| d == 0) {
        return invalid("party dimensions must be positive");
    }
    if cm.n() == 0 {
        return invalid("the multigraph has no vertices");
    }
    let total: usize = dims.iter().product();
    if total > params.max_product_dim {
        return Err(Error::ResourceLimit(format!(
            "product dimension {total} exceeds the budget {} (set {MAX_DIM_ENV} to raise it)",
            params.max_product_dim
        )));
    }
    let restarts = params.restarts.max(1);
    let problem = Problem::new(cm, dims);

    let warm_state = match warm {
        Some(opr) => Some(State::from_opr(&problem, opr)?),
        None => None,
    };
    let runs: Vec<RunResult<T>> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let init = match (&warm_state, r) {
                (Some(s), 0) => s.clone(),
                _ => State::random(&problem, params.seed, r as u64),
            };
            let init = if warm_state.is_some() && r == 0 { init } else { problem.anneal(init, params) };
            problem.optimise(init, params)
        })
        .collect();

    let mut best = 0;
    for (r, run) in runs.iter().enumerate() {
        if run.value > runs[best].value {
            best = r;
        }
    }
    let opr = problem.to_opr(&runs[best].state);
    let probs: Vec<f64> = opr.vertex_probabilities().into_iter().map(|p| p.to_f64_lossy()).collect();
    let value: f64 = probs.iter().sum();
    let residuals = verify_opr(cm, &opr, f64::INFINITY)?.residuals;
    let report = SeesawReport {
        value,
        vertex_probabilities: probs,
        converged: runs[best].converged,
        restarts_used: restarts,
        converged_restarts: runs.iter().filter(|r| r.converged).count(),
        best_restart: best,
        iterations: runs[best].sweeps,
        total_iterations: runs.iter().map(|r| r.sweeps).sum(),
        restart_values: runs.iter().map(|r| r.value.to_f64_lossy()).collect(),
        monotone_violations: runs.iter().map(|r| r.violations).sum(),
        rejected_steps: runs.iter().map(|r| r.rejected).sum(),
        residuals,
        dims: dims.to_vec(),
        seed: params.seed,
        escalated: false,
    };
    Ok(SeesawOutcome { report, opr })
}

struct Problem {
    n: usize,
    dims: Vec<usize>,
    total: usize,
    parties: Vec<String>,
    /// `neighbours[party][vertex]`.
    neighbours: Vec<Vec<Vec<usize>>>,
}

/// Factor ranges as orthonormal bases `bases[vertex][party]`, plus the product basis of
/// each vertex range in the full space (kept in sync by [`State::set_basis`]).
#[derive(Debug, Clone)]
struct State<T> {
    bases: Vec<Vec<Vec<Vec<T>>>>,
    ranges: Vec<Vec<Vec<T>>>,
    handle: Vec<T>,
}

struct RunResult<T> {
    state: State<T>,
    value: T,
    sweeps: usize,
    converged: bool,
    violations: usize,
    rejected: usize,
}

impl Problem {
    fn new(cm: &ColouredMultigraph, dims: &[usize]) -> Self {
        let n = cm.n();
        let neighbours = (0..cm.colour_count())
            .map(|c| {
                let mut lists = vec![Vec::new(); n];
                for &(u, v) in cm.colour_edges(c) {
                    lists[u].push(v);
                    lists[v].push(u);
                }
                lists.iter_mut().for_each(|l| l.sort_unstable());
                lists
            })
            .collect();
        Self {
            n,
            dims: dims.to_vec(),
            total: dims.iter().product(),
            parties: cm.colours().to_vec(),
            neighbours,
        }
    }

    fn parties(&self) -> usize {
        self.dims.len()
    }

    /// A vertex without neighbours in a colour keeps the identity there: it maximises
    /// every term and constrains nobody.
    fn is_free(&self, i: usize, party: usize) -> bool {
        self.neighbours[party][i].is_empty()
    }

    /// Exact see-saw sweeps until the objective stalls.
    fn optimise<T: Real>(&self, mut state: State<T>, params: &SeesawParams) -> RunResult<T> {
        let rank_eps = T::lit(params.rank_eps).max(T::epsilon() * T::lit(64.0));
        let tol = T::lit(params.tol);
        let slack = T::epsilon() * T::lit(1e3 * self.n.max(1) as f64);
        let mut violations = 0;
        let mut rejected = 0;
        let mut value = self.update_handle(&mut state);
        let mut sweeps = 0;
        let mut converged = false;
        while sweeps < params.max_iters {
            sweeps += 1;
            let start = value;
            for i in 0..self.n {
                for j in 0..self.parties() {
                    if !self.update_factor(&mut state, i, j, rank_eps, slack) {
                        rejected += 1;
                    }
                }
            }
            let before_handle = self.objective(&state);
            value = self.update_handle(&mut state);
            if value < before_handle - slack || value < start - slack {
                violations += 1;
            }
            debug_assert!(violations == 0, "see-saw objective decreased");
            if value - start < tol {
                converged = true;
                break;
            }
        }
        RunResult { value: self.objective(&state), state, sweeps, converged, violations, rejected }
    }

    /// Annealed penalty ascent that places a restart near a good optimum before the exact
    /// sweeps. Orthogonality is relaxed to a penalty `μ Σ Tr(Π_i^J Π_j^J)` over coloured
    /// edges with `μ` growing geometrically; a factor update is then the positive eigenspace
    /// of `T − μ N`, `N` being the sum of the neighbours' factors, and the handle takes
    /// power steps. The output is then made feasible, see [`Problem::restore_feasibility`].
    ///
    /// Plain exact sweeps stall wherever no single factor can move without its neighbours;
    /// the penalty lets neighbouring factors trade overlap first.
    fn anneal<T: Real>(&self, mut state: State<T>, params: &SeesawParams) -> State<T> {
        if params.penalty_start <= 0.0 {
            return state;
        }
        let tol = T::lit(params.tol);
        let growth = params.penalty_growth.max(1.0 + 1e-3);
        let mut mu = params.penalty_start;
        while mu <= params.penalty_max {
            let m = T::lit(mu);
            let mut last = self.penalised(&state, m);
            for _ in 0..params.penalty_sweeps {
                for i in 0..self.n {
                    for j in 0..self.parties() {
                        self.penalised_update(&mut state, i, j, m);
                    }
                }
                self.power_handle(&mut state, 2);
                let now = self.penalised(&state, m);
                if (now - last).abs() < tol {
                    break;
                }
                last = now;
            }
            mu *= growth;
        }
        self.restore_feasibility(&mut state);
        state
    }

    /// Projects each factor off the ranges of its already processed colour-neighbours.
    /// Within a colour, vertices with more neighbours go first and ties go to the larger
    /// vertex term: a vertex whose neighbours nearly share one direction would otherwise
    /// find their two slightly different ranges spanning everything and vanish.
    fn restore_feasibility<T: Real>(&self, state: &mut State<T>) {
        let terms: Vec<T> = state
            .ranges
            .iter()
            .map(|r| {
                r.iter()
                    .map(|w| {
                        let x = dot(w, &state.handle);
                        x * x
                    })
                    .sum()
            })
            .collect();
        for j in 0..self.parties() {
            let d = self.dims[j];
            let mut order: Vec<usize> = (0..self.n).filter(|&i| !self.is_free(i, j)).collect();
            order.sort_by(|&a, &b| {
                let deg = |v: usize| self.neighbours[j][v].len();
                deg(b)
                    .cmp(&deg(a))
                    .then(terms[b].partial_cmp(&terms[a]).unwrap_or(std::cmp::Ordering::Equal))
                    .then(a.cmp(&b))
            });
            let mut done = vec![false; self.n];
            for &i in &order {
                let blocked = orthonormal_span(
                    self.neighbours[j][i].iter().filter(|&&k| done[k]).flat_map(|&k| state.bases[k][j].iter()),
                    d,
                );
                let mut basis = span_off(&state.bases[i][j], &blocked, d);
                if basis.is_empty() {
                    if let Some(v) = (0..d).map(|e| project_out(&unit(d, e), &blocked)).find(|v| dot(v, v) > T::lit(1e-6)) {
                        basis = span_off(&[v], &blocked, d);
                    }
                }
                state.set_basis(i, j, basis);
                done[i] = true;
            }
        }
    }

    fn penalised<T: Real>(&self, state: &State<T>, mu: T) -> T {
        let mut overlap = T::zero();
        for (j, lists) in self.neighbours.iter().enumerate() {
            for (i, list) in lists.iter().enumerate() {
                for &k in list.iter().filter(|&&k| k > i) {
                    for a in &state.bases[i][j] {
                        for b in &state.bases[k][j] {
                            let x = dot(a, b);
                            overlap = overlap + x * x;
                        }
                    }
                }
            }
        }
        self.objective(state) - mu * overlap
    }

    fn penalised_update<T: Real>(&self, state: &mut State<T>, i: usize, party: usize, mu: T) {
        if self.is_free(i, party) {
            return;
        }
        let d = self.dims[party];
        let w = self.contracted_handle(state, i, party);
        let mut m: Matrix<T> = Matrix::zeros(d, d);
        for col in &w {
            add_outer(&mut m, col, T::one());
        }
        for &k in &self.neighbours[party][i] {
            for v in &state.bases[k][party] {
                add_outer(&mut m, v, -mu);
            }
        }
        let eig = symmetric_eigen(&m);
        let mut basis = eig.vectors_above(T::zero());
        if basis.is_empty() {
            basis.push(eig.vector(0));
        }
        state.set_basis(i, party, basis);
    }

    /// Power steps `ψ ← Σ_i Π_i ψ / ‖·‖`; each one does not lower `⟨ψ|Σ Π_i|ψ⟩`.
    fn power_handle<T: Real>(&self, state: &mut State<T>, steps: usize) {
        for _ in 0..steps {
            let mut next = vec![T::zero(); self.total];
            for w in state.ranges.iter().flatten() {
                let c = dot(w, &state.handle);
                for (x, &y) in next.iter_mut().zip(w) {
                    *x = *x + c * y;
                }
            }
            if crate::linalg::normalize(&mut next) > T::zero() {
                state.handle = next;
            }
        }
    }

    fn objective<T: Real>(&self, state: &State<T>) -> T {
        state
            .ranges
            .iter()
            .flatten()
            .map(|w| {
                let x = dot(w, &state.handle);
                x * x
            })
            .sum()
    }

    /// Sets the handle to the top eigenvector of `Σ_i Π_i`; returns the new objective.
    fn update_handle<T: Real>(&self, state: &mut State<T>) -> T {
        let mut sum: Matrix<T> = Matrix::zeros(self.total, self.total);
        for w in state.ranges.iter().flatten() {
            add_outer(&mut sum, w, T::one());
        }
        let eig = symmetric_eigen(&sum);
        let mut h = eig.vector(0);
        crate::linalg::normalize(&mut h);
        // Fix the global sign so that runs are reproducible bit for bit.
        if let Some(&x) = h.iter().find(|x| x.abs() > T::lit(1e-9)) {
            if x < T::zero() {
                h.iter_mut().for_each(|y| *y = -*y);
            }
        }
        state.handle = h;
        self.objective(state)
    }

    /// Replaces factor `(i, party)` by the support of `P T P`, unless that would lower the
    /// vertex term by more than `slack`. Returns whether the factor was replaced.
    fn update_factor<T: Real>(&self, state: &mut State<T>, i: usize, party: usize, rank_eps: T, slack: T) -> bool {
        let d = self.dims[party];
        let w = self.contracted_handle(state, i, party);
        let term = |basis: &[Vec<T>]| -> T {
            basis
                .iter()
                .map(|b| {
                    w.iter()
                        .map(|col| {
                            let x = dot(b, col);
                            x * x
                        })
                        .sum::<T>()
                })
                .sum()
        };
        let old = term(&state.bases[i][party]);
        if self.is_free(i, party) {
            return true;
        }

        let blocked = orthonormal_span(
            self.neighbours[party][i].iter().flat_map(|&j| state.bases[j][party].iter()),
            d,
        );
        let pw: Vec<Vec<T>> = w.iter().map(|col| project_out(col, &blocked)).collect();
        let k = pw.len();
        let mut gram = Matrix::zeros(k, k);
        for a in 0..k {
            for b in a..k {
                let g = dot(&pw[a], &pw[b]);
                gram[(a, b)] = g;
                gram[(b, a)] = g;
            }
        }
        let eig = symmetric_eigen(&gram);
        let mut raw = Vec::new();
        for (idx, &lambda) in eig.values.iter().enumerate() {
            if lambda <= rank_eps {
                break;
            }
            let u = eig.vector(idx);
            let mut v = vec![T::zero(); d];
            for (c, col) in pw.iter().enumerate() {
                for r in 0..d {
                    v[r] = v[r] + u[c] * col[r];
                }
            }
            raw.push(v);
        }
        let mut basis = span_off(&raw, &blocked, d);
        if basis.is_empty() && blocked.len() < d {
            // Nothing to gain here right now; keep the vertex alive with the allowed
            // coordinate direction of largest weight.
            let best = (0..d)
                .map(|e| project_out(&unit(d, e), &blocked))
                .max_by(|a, b| dot(a, a).partial_cmp(&dot(b, b)).unwrap_or(std::cmp::Ordering::Equal))
                .expect("positive dimension");
            basis = span_off(&[best], &blocked, d);
        }
        let new = term(&basis);
        if new < old - slack {
            return false;
        }
        state.set_basis(i, party, basis);
        true
    }

    /// Columns `Ψ b` of the `d_party × rank` matrix `W` with `T = W Wᵀ`, where `b` runs over
    /// the product basis of vertex `i`'s other factors.
    fn contracted_handle<T: Real>(&self, state: &State<T>, i: usize, party: usize) -> Vec<Vec<T>> {
        let d = self.dims[party];
        let inner: usize = self.dims[party + 1..].iter().product();
        let outer: usize = self.dims[..party].iter().product();
        // Rest index r = o * inner + s, matching the layout with `party` removed.
        let rest = product_basis(&state.bases[i], Some(party));
        let h = &state.handle;
        rest.iter()
            .map(|b| {
                let mut col = vec![T::zero(); d];
                for o in 0..outer {
                    for (a, slot) in col.iter_mut().enumerate() {
                        let base = (o * d + a) * inner;
                        let mut acc = T::zero();
                        for s in 0..inner {
                            acc = acc + h[base + s] * b[o * inner + s];
                        }
                        *slot = *slot + acc;
                    }
                }
                col
            })
            .collect()
    }

    fn to_opr<T: Real>(&self, state: &State<T>) -> Opr<T> {
        let projectors = state
            .bases
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(j, basis)| {
                        if basis.len() == self.dims[j] {
                            Factor::Identity
                        } else {
                            Factor::Matrix(Matrix::projector_from_basis(self.dims[j], basis))
                        }
                    })
                    .collect()
            })
            .collect();
        Opr::new(self.parties.clone(), self.dims.clone(), projectors, state.handle.clone())
            .expect("see-saw state has consistent shapes")
    }
}

impl<T: Real> State<T> {
    fn from_bases(bases: Vec<Vec<Vec<Vec<T>>>>, handle: Vec<T>) -> Self {
        let ranges = bases.iter().map(|row| product_basis(row, None)).collect();
        Self { bases, ranges, handle }
    }

    fn set_basis(&mut self, i: usize, party: usize, basis: Vec<Vec<T>>) {
        self.bases[i][party] = basis;
        self.ranges[i] = product_basis(&self.bases[i], None);
    }

    /// Seeded Gaussian rank-one factors, orthogonalised greedily along each colour in
    /// vertex order; the handle is then the top eigenvector.
    fn random(problem: &Problem, seed: u64, restart: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(restart);
        let n = problem.n;
        let mut bases: Vec<Vec<Vec<Vec<T>>>> = vec![vec![Vec::new(); problem.parties()]; n];
        for i in 0..n {
            for j in 0..problem.parties() {
                let d = problem.dims[j];
                if problem.is_free(i, j) {
                    bases[i][j] = (0..d).map(|k| unit(d, k)).collect();
                    continue;
                }
                let g: Vec<T> = (0..d).map(|_| T::lit(rng.sample::<f64, _>(StandardNormal))).collect();
                let blocked = orthonormal_span(
                    problem.neighbours[j][i].iter().filter(|&&k| k < i).flat_map(|&k| bases[k][j].iter()),
                    d,
                );
                bases[i][j] = span_off(&[g], &blocked, d);
            }
        }
        let mut state = Self::from_bases(bases, vec![T::zero(); problem.total]);
        problem.update_handle(&mut state);
        state
    }

    fn from_opr(problem: &Problem, opr: &Opr<T>) -> Result<Self> {
        if opr.dims() != problem.dims.as_slice() || opr.vertex_count() != problem.n {
            return invalid("warm-start OPR does not match the multigraph and dimensions");
        }
        let mut bases = Vec::with_capacity(problem.n);
        for i in 0..problem.n {
            let mut row = Vec::with_capacity(problem.parties());
            for (j, &d) in problem.dims.iter().enumerate() {
                let basis = match opr.factor(i, j) {
                    _ if problem.is_free(i, j) => (0..d).map(|k| unit(d, k)).collect(),
                    Factor::Identity => (0..d).map(|k| unit(d, k)).collect(),
                    Factor::Matrix(m) => symmetric_eigen(m).vectors_above(T::lit(0.5)),
                };
                row.push(basis);
            }
            bases.push(row);
        }
        let mut handle = opr.handle().to_vec();
        crate::linalg::normalize(&mut handle);
        Ok(Self::from_bases(bases, handle))
    }
}

/// Kronecker products of one basis vector per party (party 0 most significant),
/// optionally leaving one party out.
fn product_basis<T: Real>(row: &[Vec<Vec<T>>], skip: Option<usize>) -> Vec<Vec<T>> {
    let mut out = vec![vec![T::one()]];
    for (j, basis) in row.iter().enumerate() {
        if Some(j) == skip {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * basis.len());
        for prefix in &out {
            for b in basis {
                let mut v = Vec::with_capacity(prefix.len() * b.len());
                for &x in prefix {
                    v.extend(b.iter().map(|&y| x * y));
                }
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn add_outer<T: Real>(m: &mut Matrix<T>, v: &[T], scale: T) {
    let d = v.len();
    let data = m.as_mut_slice();
    for a in 0..d {
        let x = v[a] * scale;
        if x == T::zero() {
            continue;
        }
        for (r, &y) in data[a * d..(a + 1) * d].iter_mut().zip(v) {
            *r = *r + x * y;
        }
    }
}

fn unit<T: Real>(d: usize, k: usize) -> Vec<T> {
    let mut v = vec![T::zero(); d];
    v[k] = T::one();
    v
}

/// `v − Q Qᵀ v` for orthonormal `q`.
fn project_out<T: Real>(v: &[T], q: &[Vec<T>]) -> Vec<T> {
    let mut out = v.to_vec();
    for b in q {
        let c = dot(b, &out);
        for (o, &x) in out.iter_mut().zip(b) {
            *o = *o - c * x;
        }
    }
    out
}

/// Orthonormal basis of the span of `vectors` by Gram-Schmidt with pivoting: each step takes
/// the vector with the largest relative residual, so a nearly parallel pair early in the
/// list does not contribute a direction made of rounding noise.
fn orthonormal_span<'a, T: Real + 'a>(vectors: impl Iterator<Item = &'a Vec<T>>, d: usize) -> Vec<Vec<T>> {
    let thresh = T::lit(1e-10);
    let mut pending: Vec<(Vec<T>, T)> = vectors
        .filter_map(|v| {
            let scale = dot(v, v).sqrt();
            (scale > T::zero()).then(|| (v.clone(), scale.max(T::one())))
        })
        .collect();
    let mut basis: Vec<Vec<T>> = Vec::new();
    while basis.len() < d && !pending.is_empty() {
        let mut best: Option<(usize, T)> = None;
        for (idx, (v, scale)) in pending.iter_mut().enumerate() {
            if let Some(last) = basis.last() {
                *v = project_out(v, std::slice::from_ref(last));
            }
            let rel = dot(v, v).sqrt() / *scale;
            if best.map_or(true, |(_, r)| rel > r) {
                best = Some((idx, rel));
            }
        }
        let (idx, rel) = best.expect("pending is not empty");
        if rel <= thresh {
            break;
        }
        let (v, _) = pending.swap_remove(idx);
        let mut w = project_out(&v, &basis);
        w = project_out(&w, &basis);
        let nw = dot(&w, &w).sqrt();
        w.iter_mut().for_each(|x| *x = *x / nw);
        basis.push(w);
    }
    basis
}

/// Orthonormal basis of the span of `vectors` projected off the orthonormal set `blocked`.
/// Normalising a short residual magnifies its rounding error, so the basis is projected and
/// normalised a second time.
fn span_off<T: Real>(vectors: &[Vec<T>], blocked: &[Vec<T>], d: usize) -> Vec<Vec<T>> {
    let once: Vec<Vec<T>> = vectors.iter().map(|v| project_out(v, blocked)).collect();
    let basis = orthonormal_span(once.iter(), d);
    let twice: Vec<Vec<T>> = basis.iter().map(|v| project_out(v, blocked)).collect();
    orthonormal_span(twice.iter(), d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opr::closed_form::{mb_cycle, theta_closed_form_cycle};

    #[test]
    fn complete_graph_theta_is_one() {
        let out = theta_seesaw::<f64>(&Graph::complete(3), None, &SeesawParams::default()).unwrap();
        assert!((out.report.value - 1.0).abs() < 1e-8, "{}", out.report.value);
        assert_eq!(out.report.monotone_violations, 0);
    }

    #[test]
    fn pentagon_theta() {
        let params = SeesawParams::default().with_restarts(20);
        let out = theta_seesaw::<f64>(&Graph::cycle(5).unwrap(), Some(5), &params).unwrap();
        let target: f64 = theta_closed_form_cycle(5).unwrap();
        assert!((out.report.value - target).abs() < 1e-5, "{:?}", out.report);
        let sum: f64 = out.report.vertex_probabilities.iter().sum();
        assert!((sum - out.report.value).abs() < 1e-10);
        assert!(verify_opr(&Graph::cycle(5).unwrap(), &out.opr, 1e-8).unwrap().pass);
    }

    #[test]
    fn chained_pentagon() {
        let cm = ColouredMultigraph::coloured_cycle(&[0, 0, 1, 0, 1], &["A", "B"]).unwrap();
        let params = SeesawParams::default().with_restarts(30);
        let out = ctheta_seesaw::<f64>(&cm, &[2, 2], &params).unwrap();
        let target: f64 = mb_cycle(5).unwrap();
        assert!((out.report.value - target).abs() < 1e-4, "{:?}", out.report);
        assert!(verify_opr(&cm, &out.opr, 1e-7).unwrap().pass);
    }

    #[test]
    fn deterministic_given_seed() {
        let cm = ColouredMultigraph::coloured_cycle(&[0, 0, 1, 0, 1], &["A", "B"]).unwrap();
        let params = SeesawParams::default().with_restarts(4).with_seed(7);
        let a = ctheta_seesaw::<f64>(&cm, &[2, 2], &params).unwrap();
        let b = ctheta_seesaw::<f64>(&cm, &[2, 2], &params).unwrap();
        assert_eq!(a.report, b.report);
    }

    #[test]
    fn budget_and_shape_errors() {
        let cm = ColouredMultigraph::coloured_cycle(&[0, 1, 0, 1, 1], &["A", "B"]).unwrap();
        let mut params = SeesawParams::default();
        params.max_product_dim = 8;
        assert!(matches!(ctheta_seesaw::<f64>(&cm, &[3, 3], &params), Err(Error::ResourceLimit(_))));
        assert!(ctheta_seesaw::<f64>(&cm, &[3], &SeesawParams::default()).is_err());
        assert!(ctheta_seesaw::<f64>(&cm, &[0, 3], &SeesawParams::default()).is_err());
    }

    #[test]
    fn non_convergence_is_flagged_not_raised() {
        let mut params = SeesawParams::default().with_restarts(2);
        params.max_iters = 1;
        params.tol = 0.0;
        let out = theta_seesaw::<f64>(&Graph::cycle(7).unwrap(), None, &params).unwrap();
        assert!(!out.report.converged);
    }
}
