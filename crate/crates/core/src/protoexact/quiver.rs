use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{field, FiniteField};
use crate::linalg::Matrix;

/// Finite acyclic quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    src: String,
    tgt: String,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    arrows: Vec<ArrowJson>,
}

impl Quiver {
    /// Validates indices, rejects loops and oriented cycles.
    pub fn new(vertices: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let mut seen = std::collections::BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::validation("vertices", format!("duplicate label {v:?}")));
            }
        }
        for (i, &(s, t)) in arrows.iter().enumerate() {
            if s >= n || t >= n {
                return Err(Error::validation("arrows", format!("arrow {i} has an endpoint out of range")));
            }
            if s == t {
                return Err(Error::validation("arrows", format!("arrow {i} is a loop; only acyclic quivers are supported")));
            }
        }
        // Kahn's algorithm: every vertex must be removable.
        let mut indeg = vec![0usize; n];
        for &(_, t) in &arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = stack.pop() {
            removed += 1;
            for &(s, t) in &arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        if removed < n {
            return Err(Error::validation("arrows", "quiver has an oriented cycle; only acyclic quivers are supported"));
        }
        Ok(Quiver { vertices, arrows })
    }

    /// The quiver with no vertices; its representation category is the zero category.
    pub fn empty() -> Self {
        Quiver {
            vertices: vec![],
            arrows: vec![],
        }
    }

    /// One vertex, no arrows: representations are vector spaces.
    pub fn a1() -> Self {
        Quiver::linear(1)
    }

    /// `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Quiver::new(vertices, arrows).expect("linear quivers are acyclic")
    }

    pub fn a2() -> Self {
        Quiver::linear(2)
    }

    /// Two vertices with `m` parallel arrows `1 -> 2`.
    pub fn kronecker(m: usize) -> Self {
        Quiver::new(vec!["1".into(), "2".into()], vec![(0, 1); m]).expect("acyclic")
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Euler form `psi(x,y) = sum_i x_i y_i - sum_{a: s->t} x_s y_t`.
    pub fn euler_form(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        let n = self.num_vertices();
        if x.len() != n || y.len() != n {
            return Err(Error::validation(
                "dimension vector",
                format!("expected length {n}, got {} and {}", x.len(), y.len()),
            ));
        }
        let diag: i64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| x[s] * y[t]).sum();
        Ok(diag - off)
    }

    /// Number of affine coordinates of the representation space: `sum_a alpha_s alpha_t`.
    pub fn rep_space_dim(&self, alpha: &[usize]) -> usize {
        self.arrows.iter().map(|&(s, t)| alpha[s] * alpha[t]).sum()
    }

    pub fn check_dim(&self, alpha: &[usize]) -> Result<()> {
        if alpha.len() != self.num_vertices() {
            return Err(Error::validation(
                "dimension vector",
                format!("expected {} entries, got {}", self.num_vertices(), alpha.len()),
            ));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: QuiverJson =
            serde_json::from_str(s).map_err(|e| Error::validation("quiver", e.to_string()))?;
        let index = |label: &str| {
            raw.vertices
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| Error::validation("arrows", format!("unknown vertex {label:?}")))
        };
        let arrows = raw
            .arrows
            .iter()
            .map(|a| Ok((index(&a.src)?, index(&a.tgt)?)))
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(raw.vertices.clone(), arrows)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| ArrowJson {
                    src: self.vertices[s].clone(),
                    tgt: self.vertices[t].clone(),
                })
                .collect(),
        };
        serde_json::to_value(raw).expect("serializable")
    }
}

/// Representation of a quiver over F_q: one space per vertex, one matrix per arrow
/// of shape `dim(target) x dim(source)`.
#[derive(Clone, Debug)]
pub struct QuiverRep {
    quiver: Arc<Quiver>,
    field: Arc<FiniteField>,
    dim: Vec<usize>,
    mats: Vec<Matrix>,
}

impl PartialEq for QuiverRep {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver
            && self.field.q() == other.field.q()
            && self.dim == other.dim
            && self.mats == other.mats
    }
}
impl Eq for QuiverRep {}

#[derive(Serialize, Deserialize)]
struct RepJson {
    q: u32,
    dim: Vec<usize>,
    mats: Vec<Vec<Vec<u32>>>,
}

impl QuiverRep {
    pub fn new(quiver: Arc<Quiver>, q: u32, dim: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        let field = field(q)?;
        quiver.check_dim(&dim)?;
        if mats.len() != quiver.arrows().len() {
            return Err(Error::validation(
                "mats",
                format!("expected {} matrices, got {}", quiver.arrows().len(), mats.len()),
            ));
        }
        for (i, (m, &(s, t))) in mats.iter().zip(quiver.arrows()).enumerate() {
            if m.rows != dim[t] || m.cols != dim[s] {
                return Err(Error::validation(
                    "mats",
                    format!("matrix {i} has shape {}x{}, expected {}x{}", m.rows, m.cols, dim[t], dim[s]),
                ));
            }
            if m.data.iter().any(|&x| x >= q) {
                return Err(Error::validation("mats", format!("matrix {i} has an entry outside 0..{q}")));
            }
        }
        Ok(QuiverRep {
            quiver,
            field,
            dim,
            mats,
        })
    }

    /// Trusted constructor for internally produced data.
    pub(crate) fn from_parts(quiver: Arc<Quiver>, field: Arc<FiniteField>, dim: Vec<usize>, mats: Vec<Matrix>) -> Self {
        debug_assert_eq!(mats.len(), quiver.arrows().len());
        QuiverRep {
            quiver,
            field,
            dim,
            mats,
        }
    }

    pub fn zero(quiver: Arc<Quiver>, q: u32) -> Result<Self> {
        let dim = vec![0; quiver.num_vertices()];
        QuiverRep::with_zero_maps(quiver, q, dim)
    }

    /// All arrows act by zero.
    pub fn with_zero_maps(quiver: Arc<Quiver>, q: u32, dim: Vec<usize>) -> Result<Self> {
        quiver.check_dim(&dim)?;
        let mats = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::zeros(dim[t], dim[s]))
            .collect();
        QuiverRep::new(quiver, q, dim, mats)
    }

    /// The simple representation at vertex `v`.
    pub fn simple(quiver: Arc<Quiver>, q: u32, v: usize) -> Result<Self> {
        let mut dim = vec![0; quiver.num_vertices()];
        if v >= dim.len() {
            return Err(Error::validation("vertex", format!("{v} out of range")));
        }
        dim[v] = 1;
        QuiverRep::with_zero_maps(quiver, q, dim)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn dim(&self) -> &[usize] {
        &self.dim
    }

    pub fn total_dim(&self) -> usize {
        self.dim.iter().sum()
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn is_zero(&self) -> bool {
        self.dim.iter().all(|&d| d == 0)
    }

    pub fn direct_sum(&self, other: &QuiverRep) -> Result<QuiverRep> {
        self.check_same_context(other)?;
        let dim: Vec<usize> = self.dim.iter().zip(&other.dim).map(|(a, b)| a + b).collect();
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
                for i in 0..a.rows {
                    for j in 0..a.cols {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        m.set(a.rows + i, a.cols + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(QuiverRep::from_parts(self.quiver.clone(), self.field.clone(), dim, mats))
    }

    pub fn check_same_context(&self, other: &QuiverRep) -> Result<()> {
        if self.quiver != other.quiver {
            return Err(Error::validation("representation", "representations of different quivers"));
        }
        if self.q() != other.q() {
            return Err(Error::validation("q", format!("field sizes {} and {} differ", self.q(), other.q())));
        }
        Ok(())
    }

    /// Flat coordinates: arrows in order, each matrix row-major.
    pub fn coordinates(&self) -> Vec<u32> {
        self.mats.iter().flat_map(|m| m.data.iter().copied()).collect()
    }

    pub fn from_json(quiver: Arc<Quiver>, s: &str) -> Result<Self> {
        let raw: RepJson =
            serde_json::from_str(s).map_err(|e| Error::validation("representation", e.to_string()))?;
        QuiverRep::from_json_parts(quiver, raw)
    }

    fn from_json_parts(quiver: Arc<Quiver>, raw: RepJson) -> Result<Self> {
        quiver.check_dim(&raw.dim)?;
        let mut mats = Vec::new();
        for (i, (rows, &(s, t))) in raw.mats.iter().zip(quiver.arrows()).enumerate() {
            let (r, c) = (raw.dim[t], raw.dim[s]);
            // Matrices with zero rows are written as [] and carry no column count.
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::validation(
                    "mats",
                    format!("matrix {i} does not have shape {r}x{c}"),
                ));
            }
            let data = rows.iter().flatten().copied().collect();
            mats.push(Matrix { rows: r, cols: c, data });
        }
        if raw.mats.len() != quiver.arrows().len() {
            return Err(Error::validation(
                "mats",
                format!("expected {} matrices, got {}", quiver.arrows().len(), raw.mats.len()),
            ));
        }
        QuiverRep::new(quiver, raw.q, raw.dim, mats)
    }

    pub fn from_json_value(quiver: Arc<Quiver>, v: serde_json::Value) -> Result<Self> {
        let raw: RepJson =
            serde_json::from_value(v).map_err(|e| Error::validation("representation", e.to_string()))?;
        QuiverRep::from_json_parts(quiver, raw)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = RepJson {
            q: self.q(),
            dim: self.dim.clone(),
            mats: self.mats.iter().map(|m| m.to_rows()).collect(),
        };
        serde_json::to_value(raw).expect("serializable")
    }
}
