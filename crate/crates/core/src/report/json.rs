use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::spectral::{DifferentialSpec, Page};

use super::chart::arrows;

/// An integer written as a JSON number; values beyond 64 bits fall back to a
/// decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WindowJson {
    pub d: i64,
    pub t_max: i64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CellJson {
    pub s: i64,
    pub t: i64,
    pub rank: usize,
    pub torsion: Vec<Int>,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DifferentialJson {
    pub from: [i64; 2],
    pub to: [i64; 2],
    pub matrix: Vec<Vec<Int>>,
}

/// Serialized form of one page. Field order is the output key order.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PageJson {
    pub r: i64,
    pub window: WindowJson,
    pub cells: Vec<CellJson>,
    pub differentials: Vec<DifferentialJson>,
}

/// Nonzero reliable cells sorted by `s` descending then `t` ascending, and
/// the nonzero `d_r` matrices between them when `spec` is given.
pub fn page_json(page: &Page, spec: Option<&DifferentialSpec>) -> PageJson {
    let p = page.presentation();
    let mut cells: Vec<_> = page.nonzero_cells().filter(|c| c.reliable).collect();
    cells.sort_by_key(|c| (-c.s, c.t));
    let cells = cells
        .into_iter()
        .map(|c| CellJson {
            s: c.s,
            t: c.t,
            rank: c.group.rank(),
            torsion: c.group.torsion().iter().cloned().map(Int).collect(),
            basis: c.basis_reps.iter().map(|b| b.format(p)).collect(),
        })
        .collect();
    let mut differentials: Vec<DifferentialJson> = spec
        .map(|spec| arrows(page, spec))
        .unwrap_or_default()
        .into_iter()
        .filter(|a| !a.matrix.is_zero())
        .map(|a| DifferentialJson {
            from: [a.from.0, a.from.1],
            to: [a.to.0, a.to.1],
            matrix: a
                .matrix
                .to_rows()
                .into_iter()
                .map(|row| row.into_iter().map(Int).collect())
                .collect(),
        })
        .collect();
    differentials.sort_by_key(|d| (-d.from[0], d.from[1]));
    PageJson {
        r: page.r(),
        window: WindowJson {
            d: page.window().d,
            t_max: page.window().t_max,
        },
        cells,
        differentials,
    }
}

fn to_text<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

/// One page as JSON text.
pub fn emit_json(page: &Page, spec: Option<&DifferentialSpec>) -> String {
    to_text(&page_json(page, spec))
}

/// Several pages as a JSON array, each paired with its differential.
pub fn emit_json_pages(pages: &[(&Page, Option<&DifferentialSpec>)]) -> String {
    let all: Vec<PageJson> = pages.iter().map(|(p, s)| page_json(p, *s)).collect();
    to_text(&all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{cpn_model, sphere_model};

    #[test]
    fn key_order_and_types() {
        let m = sphere_model(3).unwrap();
        let e = m.e_infinity(6).unwrap();
        let text = emit_json(&e, None);
        let r = text.find("\"r\"").unwrap();
        let w = text.find("\"window\"").unwrap();
        let c = text.find("\"cells\"").unwrap();
        let d = text.find("\"differentials\"").unwrap();
        assert!(r < w && w < c && c < d);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["r"], 4);
        assert_eq!(v["cells"][0]["s"], 0);
        assert_eq!(v["cells"][0]["basis"][0], "1");
        assert!(v["cells"][0]["rank"].is_u64());
    }

    #[test]
    fn cpn2_torsion_cell() {
        let m = cpn_model(2).unwrap();
        let e = m.e_infinity(12).unwrap();
        let v: serde_json::Value = serde_json::from_str(&emit_json(&e, None)).unwrap();
        let cell = v["cells"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["s"] == -4 && c["t"] == 4)
            .unwrap();
        assert_eq!(cell["rank"], 0);
        assert_eq!(cell["torsion"], serde_json::json!([3]));
        assert_eq!(cell["basis"], serde_json::json!(["c^2*u"]));
    }

    #[test]
    fn differential_matrices() {
        let m = sphere_model(2).unwrap();
        let e2 = m.initial_page(6).unwrap();
        let v: serde_json::Value = serde_json::from_str(&emit_json(&e2, m.spec_for(2))).unwrap();
        let ds = v["differentials"].as_array().unwrap();
        assert!(ds
            .iter()
            .any(|d| d["from"] == serde_json::json!([0, 1])
                && d["matrix"] == serde_json::json!([[2]])));
        assert!(!ds.iter().any(|d| d["from"] == serde_json::json!([0, 2])));
    }
}
