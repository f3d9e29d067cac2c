//! Named cubic graphs used as construction inputs and as known prisons.

use std::fmt;
use std::str::FromStr;

use crate::graph::{CubicGraph, GraphError};
use crate::graph6::parse_graph6;

const K4_G6: &str = "C~";
const K33_G6: &str = "EFz_";
const PETERSEN_G6: &str = "IheA@GUAo";
const HEAWOOD_G6: &str = "MhEGHC@AI?_PC@_G_";
const TIETZE_G6: &str = "KhAAPWU_?_`B";
const MCGEE_G6: &str = "WhCGGD@?G?`@_@??_GG_@??C?GGC?H??C?@@?C?GG??o?@@";
const COXETER_G6: &str = "[????????????B?K?A_@O?o?EG?Q_?W??o?@S@?D@??W?@?COC?G_G?G_G?COC??";
const TUTTE_COXETER_G6: &str =
    "]hCGGC@GG?_@?@A?_?G@@??E??GG?G?OC??@??GI???_O?@?@?@??A?a???G??@@?O??E?A??G";

/// A catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Named {
    K4,
    K33,
    Petersen,
    Heawood,
    /// Tietze's graph, isomorphic to the flower snark J3.
    Tietze,
    /// Flower snark J_k for odd k >= 3.
    FlowerSnark(usize),
    McGee,
    Coxeter,
    TutteCoxeter,
}

/// Properties every catalog entry is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expected {
    pub order: usize,
    pub girth: usize,
    pub hamiltonian: bool,
    pub edge_connectivity: usize,
}

impl Named {
    /// Fixed entries, in listing order. Flower snarks are listed as J3, J5, J7.
    pub fn listing() -> Vec<Named> {
        vec![
            Named::K4,
            Named::K33,
            Named::Petersen,
            Named::Heawood,
            Named::Tietze,
            Named::FlowerSnark(3),
            Named::FlowerSnark(5),
            Named::FlowerSnark(7),
            Named::McGee,
            Named::Coxeter,
            Named::TutteCoxeter,
        ]
    }

    pub fn expected(self) -> Expected {
        let (order, girth, hamiltonian) = match self {
            Named::K4 => (4, 3, true),
            Named::K33 => (6, 4, true),
            Named::Petersen => (10, 5, false),
            Named::Heawood => (14, 6, true),
            Named::Tietze => (12, 3, false),
            Named::FlowerSnark(k) => (4 * k, k.min(6), false),
            Named::McGee => (24, 7, true),
            Named::Coxeter => (28, 7, false),
            Named::TutteCoxeter => (30, 8, true),
        };
        Expected {
            order,
            girth,
            hamiltonian,
            edge_connectivity: 3,
        }
    }

    pub fn graph(self) -> CubicGraph {
        let g6 = match self {
            Named::K4 => K4_G6,
            Named::K33 => K33_G6,
            Named::Petersen => PETERSEN_G6,
            Named::Heawood => HEAWOOD_G6,
            Named::Tietze => TIETZE_G6,
            Named::FlowerSnark(k) => return flower_snark(k),
            Named::McGee => MCGEE_G6,
            Named::Coxeter => COXETER_G6,
            Named::TutteCoxeter => TUTTE_COXETER_G6,
        };
        parse_graph6(g6).expect("embedded catalog graph6 is valid")
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Named::K4 => f.write_str("K4"),
            Named::K33 => f.write_str("K3_3"),
            Named::Petersen => f.write_str("Petersen"),
            Named::Heawood => f.write_str("Heawood"),
            Named::Tietze => f.write_str("Tietze"),
            Named::FlowerSnark(k) => write!(f, "J{k}"),
            Named::McGee => f.write_str("McGee"),
            Named::Coxeter => f.write_str("Coxeter"),
            Named::TutteCoxeter => f.write_str("TutteCoxeter"),
        }
    }
}

impl FromStr for Named {
    type Err = GraphError;

    /// Case-insensitive; `_`, `-`, parentheses and spaces are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '-' | ' ' | '(' | ')'))
            .flat_map(char::to_lowercase)
            .collect();
        let unknown = || GraphError::UnknownName(s.to_string());
        let named = match key.as_str() {
            "k4" => Named::K4,
            "k33" => Named::K33,
            "petersen" => Named::Petersen,
            "heawood" => Named::Heawood,
            "tietze" => Named::Tietze,
            "mcgee" => Named::McGee,
            "coxeter" => Named::Coxeter,
            "tuttecoxeter" | "tutte8cage" => Named::TutteCoxeter,
            other => {
                let digits = other
                    .strip_prefix("flowersnark")
                    .or_else(|| other.strip_prefix("flower"))
                    .or_else(|| other.strip_prefix('j'))
                    .ok_or_else(unknown)?;
                let digits = digits.strip_prefix('j').unwrap_or(digits);
                let k: usize = digits.parse().map_err(|_| unknown())?;
                if k < 3 || k.is_multiple_of(2) {
                    return Err(unknown());
                }
                Named::FlowerSnark(k)
            }
        };
        Ok(named)
    }
}

/// Looks up a catalog graph by name.
pub fn catalog(name: &str) -> Result<CubicGraph, GraphError> {
    Ok(name.parse::<Named>()?.graph())
}

/// Flower snark J_k: spokes a_i-b_i, a_i-c_i, a_i-d_i, the b-cycle of length
/// k, and the c/d strands closed into one cycle of length 2k with a twist.
/// Vertex 4i+0..4i+3 holds a_i, b_i, c_i, d_i.
pub fn flower_snark(k: usize) -> CubicGraph {
    assert!(
        k >= 3 && k % 2 == 1,
        "flower snarks are defined for odd k >= 3"
    );
    let (a, b, c, d) = (|i| 4 * i, |i| 4 * i + 1, |i| 4 * i + 2, |i| 4 * i + 3);
    let mut edges = Vec::with_capacity(6 * k);
    for i in 0..k {
        edges.push((a(i), b(i)));
        edges.push((a(i), c(i)));
        edges.push((a(i), d(i)));
        edges.push((b(i), b((i + 1) % k)));
        if i + 1 < k {
            edges.push((c(i), c(i + 1)));
            edges.push((d(i), d(i + 1)));
        }
    }
    edges.push((c(k - 1), d(0)));
    edges.push((d(k - 1), c(0)));
    CubicGraph::from_edges(4 * k, &edges).expect("flower snark construction is cubic")
}
