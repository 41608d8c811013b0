//! JSON persistence of root-system data and integral structure
//! constants.

use chevalley_core::chevalley::ChevalleyAlgebra;
use chevalley_core::rootsystem::RootSystem;
use serde::{Deserialize, Serialize};

/// Serializable dump of a root system, optionally with the structure
/// constants of its integral Chevalley basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootSystemDump {
    /// Compact type string, e.g. `"B2+G2"`.
    #[serde(rename = "type")]
    pub type_string: String,
    /// Component list as `[family, rank]` pairs, e.g. `[["B", 2]]`.
    pub components: Vec<(String, usize)>,
    pub rank: usize,
    /// Cartan matrix `a[i][j] = <alpha_j, alpha_i^vee>` row by row.
    pub cartan: Vec<Vec<i64>>,
    /// Half the squared norm of each simple root, normalized so short
    /// roots in each component have norm 2.
    pub half_norms: Vec<i64>,
    pub num_roots: usize,
    /// All roots in the canonical order (by height, then
    /// lexicographically), as simple-root coordinates.
    pub roots: Vec<Vec<i64>>,
    /// Labels for the canonical basis: one root vector per root, then
    /// one Cartan generator per simple root.
    pub basis_labels: Vec<String>,
    /// Sparse bracket table: rows `[i, j, k, c]` meaning the bracket of
    /// basis elements `i` and `j` has coefficient `c` on basis element
    /// `k`. Only present when constants were requested; only nonzero
    /// coefficients appear, ordered by `(i, j, k)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure_constants: Option<Vec<(usize, usize, usize, i64)>>,
}

/// Builds the dump for a root system, attaching structure constants
/// when `with_constants` is set.
#[must_use]
pub fn dump(rs: &RootSystem, with_constants: bool) -> RootSystemDump {
    let components = rs
        .components()
        .iter()
        .map(|&(fam, rank)| (fam.letter().to_string(), rank))
        .collect();
    let cartan = (0..rs.rank())
        .map(|i| (0..rs.rank()).map(|j| rs.cartan()[i][j]).collect())
        .collect();
    let roots: Vec<Vec<i64>> = rs.roots().to_vec();
    let alg = ChevalleyAlgebra::build(rs.clone());
    let basis_labels = (0..alg.dim()).map(|i| alg.label_string(i)).collect();
    let structure_constants = with_constants.then(|| {
        let mut rows = Vec::new();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                for &(k, c) in alg.entry(i, j) {
                    rows.push((i, j, k, c));
                }
            }
        }
        rows
    });
    RootSystemDump {
        type_string: rs.type_string(),
        components,
        rank: rs.rank(),
        cartan,
        half_norms: rs.half_norms().to_vec(),
        num_roots: rs.num_roots(),
        roots,
        basis_labels,
        structure_constants,
    }
}

/// Renders the dump as human-readable text.
#[must_use]
pub fn to_text(d: &RootSystemDump) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "type {}  rank {}  roots {}\n",
        d.type_string, d.rank, d.num_roots
    ));
    out.push_str("cartan:\n");
    for row in &d.cartan {
        out.push_str(&format!("  {row:?}\n"));
    }
    out.push_str("roots (height order):\n");
    for (i, r) in d.roots.iter().enumerate() {
        out.push_str(&format!("  {i:>3}: {r:?}\n"));
    }
    if let Some(table) = &d.structure_constants {
        out.push_str(&format!("structure constants ({} entries):\n", table.len()));
        for &(i, j, k, c) in table {
            out.push_str(&format!(
                "  [{}, {}] -> {} * {}\n",
                d.basis_labels[i], d.basis_labels[j], c, d.basis_labels[k]
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_dump_matches_hand_data() {
        let rs = RootSystem::parse("A1").unwrap();
        let d = dump(&rs, true);
        assert_eq!(d.type_string, "A1");
        assert_eq!(d.components, vec![("A".to_string(), 1)]);
        assert_eq!(d.rank, 1);
        assert_eq!(d.cartan, vec![vec![2]]);
        assert_eq!(d.roots, vec![vec![-1], vec![1]]);
        assert_eq!(d.basis_labels, vec!["E(-1)", "E(1)", "H(1)"]);
        let table = d.structure_constants.unwrap();
        // [E(1), E(-1)] = H(1) and the bracket with the Cartan element
        // scales root vectors by the pairing.
        assert!(table.contains(&(1, 0, 2, 1)));
        assert!(table.contains(&(0, 1, 2, -1)));
        assert!(table.contains(&(2, 1, 1, 2)));
        assert!(table.contains(&(2, 0, 0, -2)));
    }

    #[test]
    fn constants_skipped_unless_requested() {
        let rs = RootSystem::parse("A2").unwrap();
        let d = dump(&rs, false);
        assert!(d.structure_constants.is_none());
        let v = serde_json::to_value(&d).unwrap();
        assert!(v.get("structure_constants").is_none());
        assert_eq!(v["type"], "A2");
        assert_eq!(v["num_roots"], 6);
    }

    #[test]
    fn text_rendering_includes_labels() {
        let rs = RootSystem::parse("A1").unwrap();
        let d = dump(&rs, true);
        let text = to_text(&d);
        assert!(text.contains("type A1"));
        assert!(text.contains("[E(1), E(-1)] -> 1 * H(1)"));
    }

    #[test]
    fn dump_round_trips_through_json() {
        let rs = RootSystem::parse("B2").unwrap();
        let d = dump(&rs, true);
        let s = serde_json::to_string(&d).unwrap();
        let back: RootSystemDump = serde_json::from_str(&s).unwrap();
        assert_eq!(back.roots, d.roots);
        assert_eq!(back.structure_constants, d.structure_constants);
    }
}
