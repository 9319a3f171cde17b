//! Named graph families and tabulated distance-regular graphs.
//!
//! Entries are addressed as `family:params`, e.g. `johnson:7,2`,
//! `srg:10,3,0,1`, `appendix:icosahedron`, `tchebichef2:9,3/2`.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use crate::amplitudes::{ClosedForm, Term};
use crate::error::{Error, Result};
use crate::graph::{Graph, IntersectionArray, QdClass, Stratification};
use crate::jacobi::{
    jacobi_from_strata, lanczos_krylov, qd_from_intersection_array, vertex_state, JacobiCoefficients,
};
use crate::stieltjes::{spectral_measure, SpectralMeasure};

/// How far a tabulated return amplitude has been checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// The tabulated amplitude agrees with the pipeline, and with the oracle
    /// when the graph can be built.
    Verified,
    /// The tabulated amplitude disagrees with the pipeline, whose output the
    /// oracle confirms on the explicitly built graph.
    PaperTypoSuspect,
    /// The tabulated amplitude disagrees with the pipeline run from the
    /// array and no explicit graph is available to arbitrate.
    UnverifiedArrayOnly,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::PaperTypoSuspect => "paper-typo-suspect",
            Status::UnverifiedArrayOnly => "unverified-array-only",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// Canonical `family:params` key.
    pub id: String,
    pub params: Vec<usize>,
    /// `2^m` for the Tchebichef families.
    pub scale: Option<f64>,
    pub graph: Option<Graph>,
    pub origin: usize,
    pub intersection_array: Option<IntersectionArray>,
    pub jacobi: Option<JacobiCoefficients>,
    pub closed_form_q0: Option<ClosedForm>,
    pub status: Status,
    pub provenance: String,
}

/// Strata the pipeline amplitudes refer to.
#[derive(Debug, Clone)]
pub enum Strata {
    /// Distance shells of a QD stratification.
    Shells(Stratification),
    /// Orthonormal Krylov vectors from Lanczos on a non-QD graph.
    Krylov(Vec<Vec<f64>>),
    /// No vertex set (array-only or coefficient-only entries).
    Abstract,
}

/// Everything needed to evaluate amplitudes for one entry.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub jacobi: JacobiCoefficients,
    pub measure: SpectralMeasure,
    pub kappa: Option<Vec<usize>>,
    pub strata: Strata,
}

/// Stratifies from `origin`; QD graphs use the shell counts, others fall
/// back to Lanczos from the vertex state.
pub fn graph_pipeline(g: &Graph, origin: usize) -> Result<Pipeline> {
    let strat = g.stratify(origin)?;
    let (jacobi, kappa, strata) = match g.classify_qd(&strat) {
        QdClass::Qd(_) => {
            let jc = jacobi_from_strata(g, &strat)?;
            let kappa = strat.kappa.clone();
            (jc, Some(kappa), Strata::Shells(strat))
        }
        QdClass::NonQd { shell } => {
            log::debug!("origin {origin} is not QD at shell {shell}; using Lanczos");
            let k = lanczos_krylov(g, &vertex_state(g.n(), origin))?;
            (k.coefficients, None, Strata::Krylov(k.basis))
        }
    };
    let measure = spectral_measure(&jacobi)?;
    Ok(Pipeline {
        jacobi,
        measure,
        kappa,
        strata,
    })
}

impl CatalogEntry {
    fn base(id: String, params: Vec<usize>, provenance: impl Into<String>) -> Self {
        CatalogEntry {
            id,
            params,
            scale: None,
            graph: None,
            origin: 0,
            intersection_array: None,
            jacobi: None,
            closed_form_q0: None,
            status: Status::Verified,
            provenance: provenance.into(),
        }
    }

    /// Moves the walk origin. Closed forms tied to the default origin are
    /// replaced or dropped.
    pub fn with_origin(mut self, origin: usize) -> Result<Self> {
        let Some(g) = &self.graph else {
            if origin == 0 {
                return Ok(self);
            }
            return Err(Error::InvalidParams(format!(
                "{} has no explicit graph; only origin 0 is meaningful",
                self.id
            )));
        };
        g.check_vertex(origin)?;
        if origin == self.origin {
            return Ok(self);
        }
        self.origin = origin;
        let vertex_transitive = self.id.starts_with("complete")
            || self.id.starts_with("cycle")
            || self.id.starts_with("dihedral_srg")
            || self.id == "petersen";
        if !vertex_transitive {
            let n = g.n();
            self.closed_form_q0 = if self.id.starts_with("path:") && (origin == 1 || origin + 2 == n) {
                Some(path_second_vertex_q0(n))
            } else if self.id.starts_with("path:") && origin + 1 == n {
                Some(chain_q0(n, 1.0))
            } else {
                None
            };
        }
        Ok(self)
    }

    pub fn pipeline(&self) -> Result<Pipeline> {
        if let Some(g) = &self.graph {
            return graph_pipeline(g, self.origin);
        }
        let (jacobi, kappa) = if let Some(ia) = &self.intersection_array {
            let kappa = ia.shell_sizes().into_iter().map(|k| k as usize).collect();
            (qd_from_intersection_array(ia), Some(kappa))
        } else if let Some(jc) = &self.jacobi {
            (jc.clone(), None)
        } else {
            return Err(Error::InvalidParams(format!("{} has nothing to run", self.id)));
        };
        let measure = spectral_measure(&jacobi)?;
        Ok(Pipeline {
            jacobi,
            measure,
            kappa,
            strata: Strata::Abstract,
        })
    }

    pub fn has_builder(&self) -> bool {
        self.graph.is_some()
    }
}

/// Entry for a user-supplied graph, keyed by `id`. The intersection array
/// is recorded when the graph is distance-regular.
pub fn custom(id: String, g: Graph) -> CatalogEntry {
    let mut e = CatalogEntry::base(id, vec![], "user-supplied edge list");
    e.intersection_array = g.intersection_numbers().ok();
    e.graph = Some(g);
    e
}

/// `closed_form_q0` lookup by entry id.
pub fn closed_form_q0(id: &str, t: f64) -> Result<num_complex::Complex64> {
    let entry = make_entry(id)?;
    match &entry.closed_form_q0 {
        Some(cf) => Ok(cf.eval(t)),
        None => Err(Error::NoClosedForm(entry.id)),
    }
}

/// One line of [`list_entries`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Listing {
    pub id: String,
    pub schema: &'static str,
    pub provenance: String,
}

const FAMILIES: &[(&str, &str, &str)] = &[
    ("complete", "complete:n", "complete graph K_n"),
    ("cycle", "cycle:n", "cycle C_n"),
    ("petersen", "petersen", "Petersen graph, SRG(10,3,0,1)"),
    ("johnson", "johnson:n,d", "Johnson graph J(n,d), d <= n/2"),
    ("srg", "srg:v,k,lambda,mu", "strongly regular graph, array only"),
    ("dihedral_srg", "dihedral_srg:m", "normal subgroup scheme of D_2m, SRG(2m,m,0,m)"),
    ("hamming", "hamming:d,q", "Hamming graph H(d,q)"),
    ("path", "path:n", "path P_n, natural origin: endpoint 0"),
    ("glued_trees", "glued_trees:n", "two binary trees of depth n glued at the leaves, natural origin: root 0"),
    ("tchebichef1", "tchebichef1:n,m", "Tchebichef first kind, n strata, scale 2^m (m may be 3/2)"),
    ("tchebichef2", "tchebichef2:n,m", "Tchebichef second kind, n strata, scale 2^m (m may be 3/2)"),
];

/// Families first, then every tabulated row, in a fixed order.
pub fn list_entries() -> Vec<Listing> {
    let mut out: Vec<Listing> = FAMILIES
        .iter()
        .map(|&(id, schema, provenance)| Listing {
            id: id.to_string(),
            schema,
            provenance: provenance.to_string(),
        })
        .collect();
    out.extend(ROWS.iter().map(|row| Listing {
        id: format!("appendix:{}", row.id),
        schema: "appendix:row",
        provenance: format!("{} {} ({})", row.name, array_string(row.b, row.c), row.status),
    }));
    out
}

fn array_string(b: &[usize], c: &[usize]) -> String {
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    format!("{{{};{}}}", join(b), join(c))
}

fn parse_usize_list(family: &str, raw: &str) -> Result<Vec<usize>> {
    raw.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParams(format!("{family}: cannot parse parameter {p:?}")))
        })
        .collect()
}

fn expect_params(family: &str, params: &[usize], count: usize) -> Result<()> {
    if params.len() != count {
        return Err(Error::InvalidParams(format!(
            "{family} takes {count} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

/// Parses `m` as an integer, a decimal, or a fraction `p/q`.
fn parse_exponent(raw: &str) -> Result<f64> {
    let bad = || Error::InvalidParams(format!("cannot parse Tchebichef exponent {raw:?}"));
    let value = match raw.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            p / q
        }
        None => raw.trim().parse().map_err(|_| bad())?,
    };
    if !value.is_finite() || value <= 0.0 {
        return Err(bad());
    }
    Ok(value)
}

/// Builds the entry for `family[:params]`.
pub fn make_entry(spec: &str) -> Result<CatalogEntry> {
    let spec = spec.trim();
    let (family, raw) = match spec.split_once(':') {
        Some((f, r)) => (f.trim(), Some(r.trim())),
        None => (spec, None),
    };
    let ints = |count: usize| -> Result<Vec<usize>> {
        let params = match raw {
            Some(r) if !r.is_empty() => parse_usize_list(family, r)?,
            _ => Vec::new(),
        };
        expect_params(family, &params, count)?;
        Ok(params)
    };
    match family {
        "complete" => complete(ints(1)?[0]),
        "cycle" => cycle(ints(1)?[0]),
        "petersen" => {
            ints(0)?;
            petersen()
        }
        "johnson" => {
            let p = ints(2)?;
            johnson(p[0], p[1])
        }
        "srg" => {
            let p = ints(4)?;
            srg(p[0], p[1], p[2], p[3])
        }
        "dihedral_srg" => dihedral_srg(ints(1)?[0]),
        "hamming" => {
            let p = ints(2)?;
            hamming(p[0], p[1])
        }
        "path" => path(ints(1)?[0]),
        "glued_trees" => glued_trees(ints(1)?[0]),
        "tchebichef1" | "tchebichef2" => {
            let raw = raw.unwrap_or("");
            let (n, m) = raw
                .split_once(',')
                .ok_or_else(|| Error::InvalidParams(format!("{family} takes n,m")))?;
            let n = parse_usize_list(family, n)?[0];
            let m = parse_exponent(m)?;
            if family == "tchebichef1" {
                tchebichef1(n, m)
            } else {
                tchebichef2(n, m)
            }
        }
        "appendix" => appendix(raw.unwrap_or("")),
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

pub fn complete(n: usize) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("complete needs n >= 2, got {n}")));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    let mut e = CatalogEntry::base(format!("complete:{n}"), vec![n], "complete graph");
    e.graph = Some(Graph::new(n, &edges)?);
    e.intersection_array = Some(IntersectionArray::new(vec![n - 1], vec![1])?);
    let nf = n as f64;
    e.closed_form_q0 = Some(ClosedForm::new(
        1.0 / nf,
        vec![exp(1.0, -(nf - 1.0)), exp(nf - 1.0, 1.0)],
    ));
    Ok(e)
}

pub fn cycle(n: usize) -> Result<CatalogEntry> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let d = n / 2;
    let mut b = vec![1; d];
    b[0] = 2;
    let mut c = vec![1; d];
    if n % 2 == 0 {
        c[d - 1] = 2;
    }
    let mut e = CatalogEntry::base(format!("cycle:{n}"), vec![n], "cycle graph");
    e.graph = Some(Graph::new(n, &edges)?);
    e.intersection_array = Some(IntersectionArray::new(b, c)?);
    let terms = (0..n)
        .map(|l| Term::Exp {
            coef: 1.0,
            rate: 2.0 * (2.0 * PI * l as f64 / n as f64).cos(),
        })
        .collect();
    e.closed_form_q0 = Some(ClosedForm::new(1.0 / n as f64, terms));
    Ok(e)
}

/// Generalised Petersen graph GP(n, k).
fn generalized_petersen(n: usize, k: usize) -> Result<Graph> {
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    Graph::new(2 * n, &edges)
}

pub fn petersen() -> Result<CatalogEntry> {
    let mut e = CatalogEntry::base("petersen".into(), vec![], "Petersen graph, SRG(10,3,0,1)");
    e.graph = Some(generalized_petersen(5, 2)?);
    e.intersection_array = Some(IntersectionArray::new(vec![3, 2], vec![1, 1])?);
    e.closed_form_q0 = Some(ClosedForm::new(
        0.1,
        vec![exp(5.0, -1.0), exp(4.0, 2.0), exp(1.0, -3.0)],
    ));
    Ok(e)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn johnson_graph(n: usize, d: usize) -> Result<Graph> {
    if n > 63 || binomial(n, d) > crate::graph::MAX_VERTICES {
        return Err(Error::InvalidParams(format!("J({n},{d}) is too large to build")));
    }
    let subsets: Vec<u64> = (0u64..1 << n).filter(|s| s.count_ones() as usize == d).collect();
    let mut edges = Vec::new();
    for (i, &a) in subsets.iter().enumerate() {
        for (j, &b) in subsets.iter().enumerate().skip(i + 1) {
            if (a & b).count_ones() as usize + 1 == d {
                edges.push((i, j));
            }
        }
    }
    Graph::new(subsets.len(), &edges)
}

pub fn johnson(n: usize, d: usize) -> Result<CatalogEntry> {
    if n < 2 || d == 0 || 2 * d > n {
        return Err(Error::InvalidParams(format!(
            "johnson needs n >= 2 and 1 <= d <= n/2, got n = {n}, d = {d}"
        )));
    }
    let b = (0..d).map(|i| (d - i) * (n - d - i)).collect();
    let c = (1..=d).map(|i| i * i).collect();
    let mut e = CatalogEntry::base(format!("johnson:{n},{d}"), vec![n, d], "Johnson graph");
    e.intersection_array = Some(IntersectionArray::new(b, c)?);
    if n <= 20 && binomial(n, d) <= crate::graph::MAX_VERTICES {
        e.graph = Some(johnson_graph(n, d)?);
    }
    if d == 2 {
        // two-atom expression from the depth-one Stieltjes function
        let nf = n as f64;
        let root = ((nf - 2.0) * (nf + 6.0)).sqrt();
        e.closed_form_q0 = Some(ClosedForm::new(
            1.0,
            vec![Term::PhasedCosSin {
                rate: (nf - 2.0) / 2.0,
                freq: root / 2.0,
                cos_coef: 1.0,
                sin_coef: ((nf - 2.0) / (nf + 6.0)).sqrt(),
            }],
        ));
        e.status = Status::PaperTypoSuspect;
    }
    Ok(e)
}

pub fn srg(v: usize, k: usize, lambda: usize, mu: usize) -> Result<CatalogEntry> {
    let feasible = k >= 1
        && v > k + 1
        && mu >= 1
        && k > lambda
        && k * (k - lambda - 1) == mu * (v - k - 1);
    if !feasible {
        return Err(Error::InvalidParams(format!(
            "({v},{k},{lambda},{mu}) are not strongly regular parameters"
        )));
    }
    let mut e = CatalogEntry::base(
        format!("srg:{v},{k},{lambda},{mu}"),
        vec![v, k, lambda, mu],
        "strongly regular graph",
    );
    e.intersection_array = Some(IntersectionArray::new(vec![k, k - lambda - 1], vec![1, mu])?);
    Ok(e)
}

/// Cayley graph of D_2m on the reflections. Every rotation is adjacent to
/// every reflection and nothing else, so it is K_{m,m}.
pub fn dihedral_srg(m: usize) -> Result<CatalogEntry> {
    if m < 2 {
        return Err(Error::InvalidParams(format!("dihedral_srg needs m >= 2, got {m}")));
    }
    let mut edges = Vec::with_capacity(m * m);
    for r in 0..m {
        for s in 0..m {
            edges.push((r, m + s));
        }
    }
    let mut e = CatalogEntry::base(
        format!("dihedral_srg:{m}"),
        vec![m],
        "normal subgroup scheme of D_2m with H = Z_m",
    );
    e.graph = Some(Graph::new(2 * m, &edges)?);
    e.intersection_array = Some(IntersectionArray::new(vec![m, m - 1], vec![1, m])?);
    let mf = m as f64;
    e.closed_form_q0 = Some(ClosedForm::new(
        1.0 / mf,
        vec![Term::Const(mf - 1.0), Term::Cos { coef: 1.0, freq: mf }],
    ));
    Ok(e)
}

fn hamming_graph(d: usize, q: usize) -> Result<Graph> {
    let n = (q as u64)
        .checked_pow(d as u32)
        .filter(|&n| n <= crate::graph::MAX_VERTICES as u64)
        .ok_or_else(|| Error::InvalidParams(format!("H({d},{q}) is too large to build")))?
        as usize;
    let mut edges = Vec::new();
    for u in 0..n {
        let mut stride = 1;
        for _ in 0..d {
            let digit = (u / stride) % q;
            for other in digit + 1..q {
                edges.push((u, u + (other - digit) * stride));
            }
            stride *= q;
        }
    }
    Graph::new(n, &edges)
}

pub fn hamming(d: usize, q: usize) -> Result<CatalogEntry> {
    if d == 0 || q < 2 {
        return Err(Error::InvalidParams(format!("hamming needs d >= 1, q >= 2, got {d},{q}")));
    }
    let b = (0..d).map(|i| (d - i) * (q - 1)).collect();
    let c = (1..=d).collect();
    let mut e = CatalogEntry::base(format!("hamming:{d},{q}"), vec![d, q], "Hamming graph");
    e.graph = Some(hamming_graph(d, q)?);
    e.intersection_array = Some(IntersectionArray::new(b, c)?);
    // eigenvalue (q - 1)(d - j) - j with multiplicity C(d,j)(q-1)^j
    let total = (q as f64).powi(d as i32);
    let terms = (0..=d)
        .map(|j| {
            let mult = binomial(d, j) as f64 * ((q - 1) as f64).powi(j as i32);
            let lambda = ((q - 1) * (d - j)) as f64 - j as f64;
            exp(mult, -lambda)
        })
        .collect();
    e.closed_form_q0 = Some(ClosedForm::new(1.0 / total, terms));
    Ok(e)
}

/// Gauss rule of a constant chain with `n` strata and `omega`:
/// nodes `2 sqrt(omega) cos(k pi/(n+1))`, weights `2/(n+1) sin^2(k pi/(n+1))`.
fn chain_q0(n: usize, omega: f64) -> ClosedForm {
    let h = PI / (n + 1) as f64;
    let terms = (1..=n)
        .map(|k| Term::Exp {
            coef: (k as f64 * h).sin().powi(2),
            rate: 2.0 * omega.sqrt() * (k as f64 * h).cos(),
        })
        .collect();
    ClosedForm::new(2.0 / (n + 1) as f64, terms)
}

/// `<1| exp(-iAt) |1>` on P_n, vertices numbered from 0.
fn path_second_vertex_q0(n: usize) -> ClosedForm {
    let h = PI / (n + 1) as f64;
    let terms = (1..=n)
        .map(|k| Term::Exp {
            coef: (2.0 * k as f64 * h).sin().powi(2),
            rate: 2.0 * (k as f64 * h).cos(),
        })
        .collect();
    ClosedForm::new(2.0 / (n + 1) as f64, terms)
}

pub fn path(n: usize) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("path needs n >= 2, got {n}")));
    }
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let mut e = CatalogEntry::base(format!("path:{n}"), vec![n], "path graph, origin at an endpoint");
    e.graph = Some(Graph::new(n, &edges)?);
    e.closed_form_q0 = Some(chain_q0(n, 1.0));
    Ok(e)
}

/// Two heap-ordered binary trees of depth `n` sharing their `2^n` leaves.
/// Vertex 0 is the root of the first tree.
fn glued_trees_graph(n: usize) -> Result<Graph> {
    if n > 9 {
        return Err(Error::InvalidParams(format!("glued_trees({n}) is too large to build")));
    }
    let tree = (1usize << (n + 1)) - 1;
    let internal = (1usize << n) - 1;
    let mut edges = Vec::with_capacity(2 * tree);
    for h in 0..internal {
        edges.push((h, 2 * h + 1));
        edges.push((h, 2 * h + 2));
    }
    let right = |h: usize| if h >= internal { h } else { tree + h };
    for h in 0..internal {
        edges.push((right(h), right(2 * h + 1)));
        edges.push((right(h), right(2 * h + 2)));
    }
    Graph::new(tree + internal, &edges)
}

pub fn glued_trees(n: usize) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(Error::InvalidParams("glued_trees needs n >= 1".into()));
    }
    let mut e = CatalogEntry::base(
        format!("glued_trees:{n}"),
        vec![n],
        "glued binary trees, origin at a root",
    );
    e.graph = Some(glued_trees_graph(n)?);
    e.closed_form_q0 = Some(chain_q0(2 * n + 1, 2.0));
    Ok(e)
}

fn format_exponent(m: f64) -> String {
    if m.fract() == 0.0 {
        format!("{m}")
    } else if (2.0 * m).fract() == 0.0 {
        format!("{}/2", 2.0 * m)
    } else {
        format!("{m}")
    }
}

/// Orthogonal polynomials `2^{(m-1)k+1} T_k(x/2^m)`: `omega_1 = 2^{2m-1}`,
/// `omega_k = 2^{2m-2}`, zero diagonal, `n` strata.
pub fn tchebichef1(n: usize, m: f64) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(Error::InvalidParams("tchebichef1 needs n >= 1".into()));
    }
    let scale = 2f64.powf(m);
    let mut omega = vec![scale * scale / 4.0; n - 1];
    if let Some(first) = omega.first_mut() {
        *first = scale * scale / 2.0;
    }
    let mut e = CatalogEntry::base(
        format!("tchebichef1:{n},{}", format_exponent(m)),
        vec![n],
        "Tchebichef polynomials of the first kind",
    );
    e.scale = Some(scale);
    e.jacobi = Some(JacobiCoefficients::new(vec![0.0; n], omega)?);
    let terms = (0..n)
        .map(|l| Term::Exp {
            coef: 1.0,
            rate: scale * ((2 * l + 1) as f64 * PI / (2 * n) as f64).cos(),
        })
        .collect();
    e.closed_form_q0 = Some(ClosedForm::new(1.0 / n as f64, terms));
    Ok(e)
}

/// Orthogonal polynomials `2^{(m-1)k} U_k(x/2^m)`: `omega_k = 2^{2m-2}`,
/// zero diagonal, `n` strata. `m = 1` is the path from an endpoint and
/// `m = 3/2` the glued-tree column chain.
pub fn tchebichef2(n: usize, m: f64) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(Error::InvalidParams("tchebichef2 needs n >= 1".into()));
    }
    let scale = 2f64.powf(m);
    let omega = scale * scale / 4.0;
    let mut e = CatalogEntry::base(
        format!("tchebichef2:{n},{}", format_exponent(m)),
        vec![n],
        "Tchebichef polynomials of the second kind",
    );
    e.scale = Some(scale);
    e.jacobi = Some(JacobiCoefficients::new(vec![0.0; n], vec![omega; n - 1])?);
    e.closed_form_q0 = Some(chain_q0(n, omega));
    Ok(e)
}

/// `coef * e^{i k t}` as written in the tables.
fn exp(coef: f64, k: f64) -> Term {
    Term::Exp { coef, rate: -k }
}

fn cos(coef: f64, freq: f64) -> Term {
    Term::Cos { coef, freq }
}

fn icosahedron_graph() -> Result<Graph> {
    // apex 0, upper ring 1..=5, lower ring 6..=10, apex 11
    let mut edges = Vec::new();
    for i in 0..5 {
        let (u, u_next) = (1 + i, 1 + (i + 1) % 5);
        let (l, l_next) = (6 + i, 6 + (i + 1) % 5);
        edges.extend([(0, u), (u, u_next), (u, l), (u, l_next), (l, l_next), (l, 11)]);
    }
    Graph::new(12, &edges)
}

fn line_graph(g: &Graph) -> Result<Graph> {
    let e = g.edges();
    let mut edges = Vec::new();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let (a, b) = e[i];
            let (c, d) = e[j];
            if a == c || a == d || b == c || b == d {
                edges.push((i, j));
            }
        }
    }
    Graph::new(e.len(), &edges)
}

fn line_petersen_graph() -> Result<Graph> {
    line_graph(&generalized_petersen(5, 2)?)
}

/// Cubic graph from LCF notation: a Hamiltonian cycle plus chords
/// `i -- i + jumps[i mod len]`.
fn lcf(n: usize, jumps: &[i64]) -> Result<Graph> {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        let j = (i as i64 + jumps[i % jumps.len()]).rem_euclid(n as i64) as usize;
        if i < j {
            edges.push((i, j));
        }
    }
    Graph::new(n, &edges)
}

fn pappus_graph() -> Result<Graph> {
    lcf(18, &[5, 7, -7, 7, -7, -5])
}

fn desargues_graph() -> Result<Graph> {
    generalized_petersen(10, 3)
}

fn dodecahedron_graph() -> Result<Graph> {
    generalized_petersen(10, 2)
}

fn h33_graph() -> Result<Graph> {
    hamming_graph(3, 3)
}

fn h34_graph() -> Result<Graph> {
    hamming_graph(3, 4)
}

fn j84_graph() -> Result<Graph> {
    johnson_graph(8, 4)
}

struct Row {
    id: &'static str,
    name: &'static str,
    b: &'static [usize],
    c: &'static [usize],
    prefactor: f64,
    terms: fn() -> Vec<Term>,
    builder: Option<fn() -> Result<Graph>>,
    status: Status,
}

const R3: f64 = 1.732_050_807_568_877_2;
const R5: f64 = 2.236_067_977_499_79;

use Status::{PaperTypoSuspect, UnverifiedArrayOnly, Verified};

static ROWS: &[Row] = &[
    Row {
        id: "icosahedron",
        name: "Icosahedron",
        b: &[5, 2, 1],
        c: &[1, 2, 5],
        prefactor: 1.0 / 12.0,
        terms: || vec![exp(5.0, 1.0), exp(1.0, -5.0), cos(6.0, R5)],
        builder: Some(icosahedron_graph),
        status: Verified,
    },
    Row {
        id: "line-petersen",
        name: "L(Petersen)",
        b: &[4, 2, 1],
        c: &[1, 1, 4],
        prefactor: 1.0 / 15.0,
        terms: || vec![exp(4.0, 1.0), exp(1.0, -4.0), cos(10.0, 2.0)],
        builder: Some(line_petersen_graph),
        status: Verified,
    },
    Row {
        id: "pappus",
        name: "Pappus, 3-cover of K_{3,3}",
        b: &[3, 2, 2, 1],
        c: &[1, 1, 2, 3],
        prefactor: 1.0 / 18.0,
        terms: || vec![cos(1.0, 3.0), cos(1.0, R3), Term::Const(2.0)],
        builder: Some(pappus_graph),
        status: PaperTypoSuspect,
    },
    Row {
        id: "ig-ag24-pc",
        name: "IG(AG(2,4) minus a parallel class)",
        b: &[4, 3, 3, 1],
        c: &[1, 1, 3, 4],
        prefactor: 1.0 / 16.0,
        terms: || vec![cos(1.0, 4.0), cos(12.0, 2.0), Term::Const(3.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "3-cover-k99",
        name: "3-cover of K_{9,9}",
        b: &[9, 8, 6, 1],
        c: &[1, 3, 8, 9],
        prefactor: 1.0 / 27.0,
        terms: || vec![cos(1.0, 9.0), cos(18.0, 3.0), Term::Const(8.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "odd4",
        name: "Odd(4)",
        b: &[4, 2, 1],
        c: &[1, 1, 4],
        prefactor: 1.0 / 15.0,
        terms: || vec![exp(4.0, 1.0), exp(1.0, -4.0), cos(10.0, 2.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "srg-spread",
        name: "SRG minus a spread",
        b: &[9, 6, 1],
        c: &[1, 2, 9],
        prefactor: 1.0 / 40.0,
        terms: || vec![exp(9.0, 1.0), exp(1.0, -9.0), cos(30.0, 3.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "3-cover-k66",
        name: "3-cover of K_{6,6}",
        b: &[6, 5, 4, 1],
        c: &[1, 2, 5, 6],
        prefactor: 1.0 / 36.0,
        terms: || vec![cos(2.0, 6.0), cos(24.0, 6f64.sqrt()), Term::Const(10.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "hadamard-24",
        name: "Hadamard graph (order 12)",
        b: &[12, 11, 6, 1],
        c: &[1, 6, 11, 12],
        prefactor: 1.0 / 24.0,
        terms: || vec![cos(1.0, 12.0), cos(12.0, 2.0 * R5), Term::Const(8.0)],
        builder: None,
        status: UnverifiedArrayOnly,
    },
    Row {
        id: "ig-ag25-pc",
        name: "IG(AG(2,5) minus a parallel class)",
        b: &[5, 4, 4, 1],
        c: &[1, 1, 4, 5],
        prefactor: 1.0 / 25.0,
        terms: || vec![cos(1.0, 5.0), cos(20.0, R3), Term::Const(11.0)],
        builder: None,
        status: UnverifiedArrayOnly,
    },
    Row {
        id: "hadamard-16",
        name: "Hadamard graph (order 8)",
        b: &[8, 7, 4, 1],
        c: &[1, 4, 7, 8],
        prefactor: 1.0 / 32.0,
        terms: || vec![cos(2.0, 8.0), cos(16.0, 2.0 * SQRT_2), Term::Const(14.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "desargues",
        name: "Desargues",
        b: &[3, 2, 2, 1, 1],
        c: &[1, 1, 2, 2, 3],
        prefactor: 1.0 / 10.0,
        terms: || vec![cos(1.0, 3.0), cos(4.0, 2.0), cos(10.0, 1.0)],
        builder: Some(desargues_graph),
        status: PaperTypoSuspect,
    },
    Row {
        id: "klein",
        name: "Klein",
        b: &[7, 4, 1],
        c: &[1, 2, 7],
        prefactor: 1.0 / 24.0,
        terms: || vec![exp(7.0, 1.0), exp(1.0, -7.0), cos(16.0, 7f64.sqrt())],
        builder: None,
        status: Verified,
    },
    Row {
        id: "h33",
        name: "H(3,3)",
        b: &[6, 4, 2],
        c: &[1, 2, 3],
        prefactor: 1.0 / 27.0,
        terms: || vec![exp(1.0, -6.0), exp(8.0, 3.0), exp(6.0, -3.0), Term::Const(12.0)],
        builder: Some(h33_graph),
        status: Verified,
    },
    Row {
        id: "coxeter",
        name: "Coxeter",
        b: &[3, 2, 2, 1],
        c: &[1, 1, 1, 2],
        prefactor: 1.0 / 28.0,
        terms: || vec![exp(19.0, 1.0), exp(8.0, -2.0), cos(12.0, SQRT_2)],
        builder: None,
        status: UnverifiedArrayOnly,
    },
    Row {
        id: "mathon-13-3",
        name: "Mathon Cycl(13,3)",
        b: &[13, 8, 1],
        c: &[1, 4, 13],
        prefactor: 1.0 / 42.0,
        terms: || vec![exp(13.0, 1.0), exp(1.0, -13.0), cos(28.0, 13f64.sqrt())],
        builder: None,
        status: Verified,
    },
    Row {
        id: "taylor-p17",
        name: "Taylor(P(17))",
        b: &[17, 8, 1],
        c: &[1, 8, 17],
        prefactor: 1.0 / 36.0,
        terms: || vec![exp(17.0, 1.0), exp(1.0, -17.0), cos(18.0, 17f64.sqrt())],
        builder: None,
        status: Verified,
    },
    Row {
        id: "taylor-srg25",
        name: "Taylor(SRG(25,12))",
        b: &[25, 12, 1],
        c: &[1, 12, 25],
        prefactor: 1.0 / 52.0,
        terms: || vec![exp(25.0, 1.0), exp(1.0, -25.0), cos(26.0, 5.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "mathon-16-3",
        name: "Mathon Cycl(16,3)",
        b: &[16, 10, 1],
        c: &[1, 5, 16],
        prefactor: 1.0 / 51.0,
        terms: || vec![exp(16.0, 1.0), exp(1.0, -16.0), cos(34.0, 4.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "mathon-11-5",
        name: "Mathon Cycl(11,5)",
        b: &[11, 8, 1],
        c: &[1, 2, 11],
        prefactor: 1.0 / 60.0,
        terms: || vec![exp(11.0, 1.0), exp(1.0, -11.0), cos(48.0, 11f64.sqrt())],
        builder: None,
        status: Verified,
    },
    Row {
        id: "mathon-19-3",
        name: "Mathon Cycl(19,3)",
        b: &[19, 12, 1],
        c: &[1, 6, 19],
        prefactor: 1.0 / 60.0,
        terms: || vec![exp(19.0, 1.0), exp(1.0, -19.0), cos(40.0, 19f64.sqrt())],
        builder: None,
        status: Verified,
    },
    Row {
        id: "taylor-srg29",
        name: "Taylor(SRG(29,14))",
        b: &[29, 14, 1],
        c: &[1, 14, 29],
        prefactor: 1.0 / 60.0,
        terms: || vec![exp(29.0, 1.0), exp(1.0, -29.0), cos(30.0, 29f64.sqrt())],
        builder: None,
        status: Verified,
    },
    Row {
        id: "taylor-p13",
        name: "Taylor(P(13))",
        b: &[13, 6, 1],
        c: &[1, 6, 13],
        prefactor: 1.0 / 28.0,
        terms: || vec![exp(13.0, 1.0), exp(1.0, -13.0), cos(14.0, 13f64.sqrt())],
        builder: None,
        status: Verified,
    },
    Row {
        id: "gq24-spread",
        name: "GQ(2,4) minus a spread",
        b: &[8, 6, 1],
        c: &[1, 3, 8],
        prefactor: 1.0 / 27.0,
        terms: || vec![exp(8.0, 1.0), exp(1.0, -8.0), exp(12.0, -2.0), exp(6.0, 4.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "doro",
        name: "Doro",
        b: &[12, 10, 3],
        c: &[1, 3, 8],
        prefactor: 1.0 / 68.0,
        terms: || vec![exp(1.0, -12.0), exp(17.0, -4.0), exp(16.0, 5.0), Term::Const(34.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "locally-petersen",
        name: "Locally Petersen",
        b: &[10, 6, 4],
        c: &[1, 2, 5],
        prefactor: 1.0 / 65.0,
        terms: || vec![exp(1.0, -10.0), exp(13.0, -5.0), exp(25.0, 3.0), Term::Const(26.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "taylor-gq22",
        name: "Taylor(GQ(2,2))",
        b: &[15, 8, 1],
        c: &[1, 8, 15],
        prefactor: 1.0 / 32.0,
        terms: || vec![exp(15.0, 1.0), exp(6.0, 5.0), exp(10.0, -3.0), exp(1.0, -15.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "taylor-t6",
        name: "Taylor(T(6))",
        b: &[15, 6, 1],
        c: &[1, 6, 15],
        prefactor: 1.0 / 32.0,
        terms: || vec![exp(15.0, 1.0), exp(10.0, 3.0), exp(6.0, -5.0), exp(1.0, -15.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "gosset",
        name: "Gosset, Taylor(Schlaefli)",
        b: &[27, 10, 1],
        c: &[1, 10, 27],
        prefactor: 1.0 / 56.0,
        terms: || vec![exp(27.0, 1.0), exp(1.0, -27.0), exp(7.0, -9.0), exp(21.0, 3.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "taylor-coschlafli",
        name: "Taylor(co-Schlaefli)",
        b: &[27, 16, 1],
        c: &[1, 16, 27],
        prefactor: 1.0 / 56.0,
        terms: || vec![exp(27.0, 1.0), exp(1.0, -27.0), exp(7.0, 9.0), exp(21.0, -3.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "gh22",
        name: "GH(2,2)",
        b: &[6, 4, 4],
        c: &[1, 1, 3],
        prefactor: 1.0 / 63.0,
        terms: || vec![exp(27.0, 1.0), exp(1.0, -6.0), exp(14.0, 3.0), exp(21.0, -3.0)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "h34",
        name: "H(3,4), Doob",
        b: &[9, 6, 3],
        c: &[1, 2, 3],
        prefactor: 1.0 / 64.0,
        terms: || vec![exp(27.0, -1.0), exp(27.0, 3.0), exp(9.0, -5.0), exp(1.0, -9.0)],
        builder: Some(h34_graph),
        status: Verified,
    },
    Row {
        id: "wells",
        name: "Wells",
        b: &[5, 4, 1, 1],
        c: &[1, 1, 4, 5],
        prefactor: 1.0 / 32.0,
        terms: || vec![exp(10.0, -1.0), exp(1.0, -5.0), exp(5.0, 3.0), cos(16.0, R5)],
        builder: None,
        status: Verified,
    },
    Row {
        id: "gh21",
        name: "GH(2,1)",
        b: &[4, 2, 2],
        c: &[1, 1, 2],
        prefactor: 1.0 / 21.0,
        terms: || vec![exp(1.0, -4.0), exp(8.0, 2.0), exp(12.0, -1.0), cos(12.0, SQRT_2)],
        builder: None,
        status: UnverifiedArrayOnly,
    },
    Row {
        id: "gh31",
        name: "GH(3,1)",
        b: &[6, 3, 3],
        c: &[1, 1, 2],
        prefactor: 1.0 / 52.0,
        terms: || vec![exp(1.0, -6.0), exp(27.0, 2.0), exp(24.0, -2.0), cos(24.0, R3)],
        builder: None,
        status: UnverifiedArrayOnly,
    },
    Row {
        id: "dodecahedron",
        name: "Dodecahedron",
        b: &[3, 2, 1, 1, 1],
        c: &[1, 1, 1, 2, 3],
        prefactor: 1.0 / 20.0,
        terms: || {
            vec![
                exp(5.0, -1.0),
                exp(4.0, 2.0),
                exp(1.0, -3.0),
                cos(6.0, R5),
                Term::Const(4.0),
            ]
        },
        builder: Some(dodecahedron_graph),
        status: Verified,
    },
    Row {
        id: "perkel",
        name: "Perkel",
        b: &[6, 5, 2],
        c: &[1, 1, 3],
        prefactor: 1.0 / 57.0,
        terms: || vec![exp(1.0, -6.0), exp(20.0, 3.0), exp(36.0, -1.5), cos(36.0, R5 / 2.0)],
        builder: None,
        status: UnverifiedArrayOnly,
    },
    Row {
        id: "go21",
        name: "GO(2,1)",
        b: &[4, 2, 2, 2],
        c: &[1, 1, 1, 2],
        prefactor: 1.0 / 45.0,
        terms: || {
            vec![
                exp(9.0, 1.0),
                exp(10.0, -1.0),
                exp(16.0, 2.0),
                exp(9.0, -3.0),
                exp(1.0, -4.0),
            ]
        },
        builder: None,
        status: Verified,
    },
    Row {
        id: "3-cover-gq22",
        name: "3-cover of GQ(2,2)",
        b: &[6, 4, 2, 1],
        c: &[1, 1, 4, 6],
        prefactor: 1.0 / 45.0,
        terms: || {
            vec![
                exp(9.0, -1.0),
                exp(18.0, 2.0),
                exp(5.0, 3.0),
                exp(12.0, -3.0),
                exp(1.0, -6.0),
            ]
        },
        builder: None,
        status: Verified,
    },
    Row {
        id: "j84",
        name: "J(8,4)",
        b: &[16, 9, 4, 1],
        c: &[1, 4, 9, 16],
        prefactor: 1.0 / 70.0,
        terms: || {
            vec![
                exp(1.0, -16.0),
                exp(7.0, -8.0),
                exp(28.0, 2.0),
                exp(20.0, -2.0),
                exp(14.0, 4.0),
            ]
        },
        builder: Some(j84_graph),
        status: Verified,
    },
];

/// Ids of every tabulated row, in table order.
pub fn appendix_ids() -> Vec<&'static str> {
    ROWS.iter().map(|r| r.id).collect()
}

fn appendix(row_id: &str) -> Result<CatalogEntry> {
    let row = ROWS
        .iter()
        .find(|r| r.id == row_id)
        .ok_or_else(|| Error::UnknownFamily(format!("appendix:{row_id}")))?;
    let mut e = CatalogEntry::base(
        format!("appendix:{}", row.id),
        vec![],
        format!("tabulated row {} {}", row.name, array_string(row.b, row.c)),
    );
    e.intersection_array = Some(IntersectionArray::new(row.b.to_vec(), row.c.to_vec())?);
    if let Some(build) = row.builder {
        e.graph = Some(build()?);
    }
    e.closed_form_q0 = Some(ClosedForm::new(row.prefactor, (row.terms)()));
    e.status = row.status;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!(make_entry("johnson:7,2").unwrap().id, "johnson:7,2");
        assert_eq!(make_entry(" srg:10,3,0,1 ").unwrap().params, vec![10, 3, 0, 1]);
        assert_eq!(make_entry("petersen").unwrap().graph.unwrap().n(), 10);
        assert_eq!(make_entry("tchebichef2:5,3/2").unwrap().id, "tchebichef2:5,3/2");
        assert!(matches!(make_entry("nope:3"), Err(Error::UnknownFamily(_))));
        assert!(matches!(make_entry("appendix:nope"), Err(Error::UnknownFamily(_))));
        assert!(matches!(make_entry("complete:1"), Err(Error::InvalidParams(_))));
        assert!(matches!(make_entry("complete:x"), Err(Error::InvalidParams(_))));
        assert!(matches!(make_entry("complete:3,4"), Err(Error::InvalidParams(_))));
        assert!(matches!(make_entry("johnson:5,3"), Err(Error::InvalidParams(_))));
        assert!(matches!(make_entry("srg:10,3,0,2"), Err(Error::InvalidParams(_))));
        assert!(matches!(make_entry("tchebichef1:4"), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn johnson_8_4_array() {
        let ia = make_entry("johnson:8,4").unwrap().intersection_array.unwrap();
        assert_eq!(ia.b(), &[16, 9, 4, 1]);
        assert_eq!(ia.c(), &[1, 4, 9, 16]);
    }

    #[test]
    fn glued_trees_shape() {
        for n in 1..=6 {
            let e = glued_trees(n).unwrap();
            let g = e.graph.as_ref().unwrap();
            assert_eq!(g.n(), (1 << (n + 1)) + (1 << n) - 2);
            let p = e.pipeline().unwrap();
            assert!(matches!(p.strata, Strata::Shells(_)));
            assert_eq!(p.jacobi.depth(), 2 * n);
            assert!(p.jacobi.alpha().iter().all(|&a| a == 0.0));
            assert!(p.jacobi.omega().iter().all(|&w| w == 2.0));
        }
    }

    #[test]
    fn builders_reproduce_arrays() {
        let mut specs: Vec<String> = ["petersen", "johnson:6,3", "johnson:9,2", "hamming:3,3", "hamming:2,5"]
            .iter()
            .map(ToString::to_string)
            .collect();
        specs.extend((2..=8).map(|n| format!("complete:{n}")));
        specs.extend((3..=12).map(|n| format!("cycle:{n}")));
        specs.extend((2..=6).map(|m| format!("dihedral_srg:{m}")));
        specs.extend(
            ROWS.iter()
                .filter(|r| r.builder.is_some())
                .map(|r| format!("appendix:{}", r.id)),
        );
        for spec in specs {
            let e = make_entry(&spec).unwrap();
            let built = e.graph.as_ref().unwrap().intersection_numbers().unwrap();
            assert_eq!(Some(built), e.intersection_array, "{spec}");
        }
    }

    #[test]
    fn tchebichef_reductions() {
        let t = tchebichef1(4, 2.0).unwrap();
        assert_eq!(t.jacobi.unwrap().omega(), &[8.0, 4.0, 4.0]);
        let path = path(7).unwrap().pipeline().unwrap();
        let t2 = tchebichef2(7, 1.0).unwrap();
        assert_eq!(path.jacobi.max_abs_diff(t2.jacobi.as_ref().unwrap()), Some(0.0));
        let glued = glued_trees(3).unwrap().pipeline().unwrap();
        let t2 = tchebichef2(7, 1.5).unwrap();
        assert!(glued.jacobi.max_abs_diff(t2.jacobi.as_ref().unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn listing_is_deterministic() {
        let a = list_entries();
        assert_eq!(a, list_entries());
        assert!(a.iter().any(|l| l.id == "petersen"));
        assert!(a.iter().filter(|l| l.id.starts_with("appendix:")).count() >= 10);
        assert_eq!(appendix_ids().len(), 40);
    }

    #[test]
    fn every_row_runs() {
        for id in appendix_ids() {
            let e = make_entry(&format!("appendix:{id}")).unwrap();
            let p = e.pipeline().unwrap();
            assert!((p.measure.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn origin_override() {
        let e = path(6).unwrap().with_origin(1).unwrap();
        let p = e.pipeline().unwrap();
        assert!(matches!(p.strata, Strata::Krylov(_)));
        assert!(e.closed_form_q0.is_some());
        assert!(path(6).unwrap().with_origin(6).is_err());
        assert!(srg(10, 3, 0, 1).unwrap().with_origin(2).is_err());
        assert!(closed_form_q0("srg:10,3,0,1", 1.0).is_err());
        assert!((closed_form_q0("petersen", 0.0).unwrap().re - 1.0).abs() < 1e-15);
    }
}
