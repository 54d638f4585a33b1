//! Plumbing graphs of the singularity links and the homology of their
//! boundary 3-manifolds.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::matrix::IntMatrix;
use crate::sl2z::CycleWord;

pub use crate::invariants::snf::AbelianGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub weight: i64,
    pub genus: u32,
}

/// Weighted multigraph; loops are allowed and edges are unordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<[usize; 2]>,
}

#[derive(Deserialize)]
struct RawGraph {
    vertices: Vec<Vertex>,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGraph> for PlumbingGraph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        PlumbingGraph::new(raw.vertices, raw.edges)
    }
}

impl PlumbingGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<[usize; 2]>) -> Result<Self> {
        if let Some(&[i, j]) = edges.iter().find(|[i, j]| *i >= vertices.len() || *j >= vertices.len()) {
            return Err(Error::VertexOutOfRange(i, j));
        }
        let edges = edges
            .into_iter()
            .map(|[i, j]| if i <= j { [i, j] } else { [j, i] })
            .collect();
        Ok(PlumbingGraph { vertices, edges })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&[i, j]| i == v && j == v).count()
    }

    pub fn component_count(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &[i, j] in &self.edges {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// First Betti number of the graph: `#E - #V + #components`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertices.len()
    }

    pub fn total_genus(&self) -> usize {
        self.vertices.iter().map(|v| v.genus as usize).sum()
    }

    /// DOT rendering; loops become self-edges, multi-edges repeat.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph plumbing {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"v{i} [{}, g={}]\"];", v.weight, v.genus);
        }
        for [i, j] in &self.edges {
            let _ = writeln!(out, "  v{i} -- v{j};");
        }
        out.push_str("}\n");
        out
    }
}

/// Circular plumbing for a cusp word: a `k`-cycle of spheres for `k > 2`, a
/// double edge for `k = 2`, one vertex with a loop for `k = 1`.
pub fn cusp_graph(w: &CycleWord) -> PlumbingGraph {
    let k = w.len();
    let vertices = w.entries().iter().map(|&n| Vertex { weight: -n, genus: 0 }).collect();
    let edges = (0..k).map(|i| [i, (i + 1) % k]).collect();
    PlumbingGraph::new(vertices, edges).expect("cycle edges are in range")
}

/// One genus-1 vertex of weight `-n`.
pub fn elliptic_graph(n: i64) -> Result<PlumbingGraph> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("elliptic graph needs n >= 1, got {n}")));
    }
    Ok(PlumbingGraph {
        vertices: vec![Vertex { weight: -n, genus: 1 }],
        edges: Vec::new(),
    })
}

pub fn family_graph(f: &Family) -> PlumbingGraph {
    match f {
        Family::Elliptic(n) => elliptic_graph(*n).expect("family validated n"),
        Family::Cusp(w) => cusp_graph(w),
    }
}

/// Diagonal: Euler weight plus 2 per loop. Off-diagonal: edge multiplicity.
pub fn intersection_matrix(g: &PlumbingGraph) -> IntMatrix {
    let n = g.vertices.len();
    let mut q = IntMatrix::zeros(n, n);
    for (i, v) in g.vertices.iter().enumerate() {
        q[(i, i)] = BigInt::from(v.weight);
    }
    for &[i, j] in &g.edges {
        if i == j {
            q[(i, i)] += 2;
        } else {
            q[(i, j)] += 1;
            q[(j, i)] += 1;
        }
    }
    q
}

/// `H_1` of the boundary: `Z^(b_1(G) + 2 Σ genus) ⊕ coker Q`.
pub fn boundary_homology(g: &PlumbingGraph) -> AbelianGroup {
    AbelianGroup::cokernel(&intersection_matrix(g)).with_extra_free(g.cycle_rank() + 2 * g.total_genus())
}

/// Symbolic smooth surgery picture of the link.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurgeryDescription {
    /// Chain of unknots with framings `-n_i`, closed up by a 0-framed unknot
    /// (equivalently, a dotted circle).
    Chain { framings: Vec<i64>, closing_framing: i64 },
    /// One knot of framing `-n_1 + 2` running over a 1-handle twice with zero
    /// linking.
    NodalOverOneHandle { framing: i64, one_handles: usize },
    /// Borromean rings with framings `(0, 0, -n)`.
    Borromean { framings: [i64; 3] },
}

pub fn smooth_surgery_description(f: &Family) -> SurgeryDescription {
    match f {
        Family::Elliptic(n) => SurgeryDescription::Borromean { framings: [0, 0, -n] },
        Family::Cusp(w) if w.len() == 1 => SurgeryDescription::NodalOverOneHandle {
            framing: -w.entries()[0] + 2,
            one_handles: 1,
        },
        Family::Cusp(w) => SurgeryDescription::Chain {
            framings: w.entries().iter().map(|n| -n).collect(),
            closing_framing: 0,
        },
    }
}

impl SurgeryDescription {
    pub fn to_text(&self) -> String {
        match self {
            SurgeryDescription::Chain {
                framings,
                closing_framing,
            } => {
                let chain: Vec<String> = framings.iter().map(i64::to_string).collect();
                format!(
                    "chain of unknots with framings [{}] closed by a {closing_framing}-framed unknot (or a dotted circle)",
                    chain.join(", ")
                )
            }
            SurgeryDescription::NodalOverOneHandle { framing, one_handles } => {
                format!("{framing}-framed unknot over {one_handles} 1-handle, passing twice with zero linking")
            }
            SurgeryDescription::Borromean { framings } => format!(
                "Borromean rings with framings ({}, {}, {})",
                framings[0], framings[1], framings[2]
            ),
        }
    }
}
