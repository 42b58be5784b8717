//! JSON documents for complexes, cell sets, classes, families, profiles,
//! `K_0^*` elements, clutching classes and simplicial maps.
//!
//! Cells are written as vertex lists; where a cell is a map key it is the
//! comma-joined vertex list, e.g. `"0,1"`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bundles::BundleClass;
use crate::clutch::{label_from_map, ClutchClass, ClutchLabel};
use crate::cohomology::cohomology_of;
use crate::complex::{CellSet, FacePoset, SimplicialMap, Vertex};
use crate::cuntz::{CuntzClass, Dim, DimensionFunction};
use crate::error::{Error, Result};
use crate::k0star::K0StarElement;
use crate::rofp::{EigenvalueProfile, FamilyEntry, RankOrderedFamily};
use crate::{Int, Rational};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

pub fn cell_key(cell: &[Vertex]) -> String {
    cell.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_cell_key(x: &FacePoset, key: &str) -> Result<usize> {
    let mut cell = key
        .split(',')
        .map(|p| p.trim().parse::<Vertex>().map_err(|_| Error::Parse(format!("bad cell key {key:?}"))))
        .collect::<Result<Vec<_>>>()?;
    cell.sort_unstable();
    x.lookup(&cell)
}

fn cells_of(x: &FacePoset, lists: &[Vec<Vertex>]) -> Result<CellSet> {
    lists
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            x.lookup(&c)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub vertices: Vec<Vertex>,
    pub maximal_cells: Vec<Vec<Vertex>>,
}

impl ComplexDoc {
    pub fn of(x: &FacePoset) -> Self {
        ComplexDoc { vertices: x.vertices().to_vec(), maximal_cells: x.maximal_cells() }
    }

    /// Vertices missing from every listed cell become isolated points.
    pub fn build(&self) -> Result<FacePoset> {
        let mut cells = self.maximal_cells.clone();
        for &v in &self.vertices {
            if !cells.iter().any(|c| c.contains(&v)) {
                cells.push(vec![v]);
            }
        }
        let x = FacePoset::build(&cells)?;
        if let Some(v) = x.vertices().iter().find(|v| !self.vertices.contains(v)) {
            return Err(Error::Parse(format!("vertex {v} is used by a cell but not listed")));
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellsDoc {
    pub cells: Vec<Vec<Vertex>>,
}

impl CellsDoc {
    pub fn of(x: &FacePoset, s: &CellSet) -> Self {
        CellsDoc { cells: x.cell_lists(s) }
    }

    pub fn build(&self, x: &FacePoset) -> Result<CellSet> {
        cells_of(x, &self.cells)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleDoc {
    pub complex: ComplexDoc,
    pub base: Vec<Vec<Vertex>>,
    pub rank: usize,
    /// Coordinates in the computed basis of `H^2(base)`; empty means zero.
    #[serde(default)]
    pub c1: Vec<Int>,
}

impl BundleDoc {
    pub fn of(b: &BundleClass) -> Self {
        BundleDoc {
            complex: ComplexDoc::of(b.complex()),
            base: b.complex().cell_lists(b.base()),
            rank: b.rank,
            c1: b.c1.clone(),
        }
    }

    pub fn build(&self) -> Result<BundleClass> {
        let x = Arc::new(self.complex.build()?);
        let base = cells_of(&x, &self.base)?;
        let h2 = Arc::new(cohomology_of(&x, &base, 2)?);
        let c1 = if self.c1.is_empty() { h2.group.zero_element() } else { self.c1.clone() };
        BundleClass::new(h2, self.rank, c1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumDoc {
    #[serde(default)]
    pub c1: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuntzDoc {
    pub complex: ComplexDoc,
    /// Rank per cell: a number or `"inf"`.
    pub r: BTreeMap<String, Dim>,
    /// Classes on the finite level sets; missing strata are trivial.
    #[serde(default)]
    pub strata: Vec<StratumEntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumEntryDoc {
    pub i: usize,
    pub class: StratumDoc,
}

impl CuntzDoc {
    pub fn of(a: &CuntzClass) -> Self {
        let x = a.complex();
        let r = a.r().values().iter().map(|(&c, &d)| (cell_key(x.cell(c)), d)).collect();
        let strata =
            a.strata().iter().map(|(&i, b)| StratumEntryDoc { i, class: StratumDoc { c1: b.c1.clone() } }).collect();
        CuntzDoc { complex: ComplexDoc::of(x), r, strata }
    }

    pub fn build(&self) -> Result<CuntzClass> {
        let x = Arc::new(self.complex.build()?);
        self.build_on(&x)
    }

    pub fn build_on(&self, x: &Arc<FacePoset>) -> Result<CuntzClass> {
        let mut values = BTreeMap::new();
        for (key, &d) in &self.r {
            values.insert(parse_cell_key(x, key)?, d);
        }
        let r = DimensionFunction::new(values);
        let mut strata = BTreeMap::new();
        let mut given = BTreeMap::new();
        for s in &self.strata {
            if !r.finite_values().contains(&s.i) {
                return Err(Error::InvalidClass(format!("stratum {} is not a value of r", s.i)));
            }
            if given.insert(s.i, &s.class.c1).is_some() {
                return Err(Error::Parse(format!("stratum {} is listed twice", s.i)));
            }
        }
        for i in r.finite_values() {
            let level = r.level(Dim::Finite(i));
            x.require_locally_closed(&level)?;
            let h2 = Arc::new(cohomology_of(x, &level, 2)?);
            let c1 = match given.get(&i) {
                Some(c1) if !c1.is_empty() => (*c1).clone(),
                _ => h2.group.zero_element(),
            };
            strata.insert(i, BundleClass::new(h2, i, c1)?);
        }
        CuntzClass::new(x, r, strata)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub rank: usize,
    pub cells: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<StratumDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub complex: ComplexDoc,
    pub entries: Vec<EntryDoc>,
    #[serde(default)]
    pub infinite_tail: Vec<Vec<Vertex>>,
}

impl FamilyDoc {
    pub fn of(f: &RankOrderedFamily) -> Self {
        let x = &f.complex;
        let entries = f
            .entries
            .iter()
            .map(|e| EntryDoc {
                rank: e.rank,
                cells: x.cell_lists(&e.cells),
                class: e.class.as_ref().map(|b| StratumDoc { c1: b.c1.clone() }),
            })
            .collect();
        FamilyDoc { complex: ComplexDoc::of(x), entries, infinite_tail: x.cell_lists(&f.infinite_tail) }
    }

    pub fn build(&self) -> Result<RankOrderedFamily> {
        let x = Arc::new(self.complex.build()?);
        let mut entries = Vec::new();
        for e in &self.entries {
            let cells = cells_of(&x, &e.cells)?;
            let class = match &e.class {
                None => None,
                Some(s) => {
                    let h2 = Arc::new(cohomology_of(&x, &cells, 2)?);
                    let c1 = if s.c1.is_empty() { h2.group.zero_element() } else { s.c1.clone() };
                    Some(BundleClass::new(h2, e.rank, c1)?)
                }
            };
            entries.push(FamilyEntry { rank: e.rank, cells, class });
        }
        Ok(RankOrderedFamily::new(&x, entries, cells_of(&x, &self.infinite_tail)?))
    }
}

/// Eigenvalues per cell as `[numerator, denominator]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileDoc {
    pub complex: ComplexDoc,
    pub values: BTreeMap<String, Vec<(i64, i64)>>,
}

impl ProfileDoc {
    pub fn of(x: &FacePoset, p: &EigenvalueProfile<Rational>) -> Self {
        let values = p
            .values
            .iter()
            .map(|(&c, l)| (cell_key(x.cell(c)), l.iter().map(|q| (*q.numer(), *q.denom())).collect()))
            .collect();
        ProfileDoc { complex: ComplexDoc::of(x), values }
    }

    pub fn build(&self) -> Result<(Arc<FacePoset>, EigenvalueProfile<Rational>)> {
        let x = Arc::new(self.complex.build()?);
        let mut values = BTreeMap::new();
        for (key, list) in &self.values {
            let mut out = Vec::new();
            for &(n, d) in list {
                if d == 0 {
                    return Err(Error::Parse(format!("zero denominator at {key:?}")));
                }
                out.push(Rational::new(n, d));
            }
            values.insert(parse_cell_key(&x, key)?, out);
        }
        Ok((Arc::clone(&x), EigenvalueProfile::new(values)?))
    }
}

/// Open sets `U_0, U_1, ...` to be shrunk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDoc {
    pub complex: ComplexDoc,
    pub opens: Vec<Vec<Vec<Vertex>>>,
}

impl CoverDoc {
    pub fn build(&self) -> Result<(FacePoset, Vec<CellSet>)> {
        let x = self.complex.build()?;
        let opens = self.opens.iter().map(|u| cells_of(&x, u)).collect::<Result<_>>()?;
        Ok((x, opens))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0Doc {
    pub complex: ComplexDoc,
    pub values: BTreeMap<String, Int>,
}

impl K0Doc {
    pub fn of(f: &K0StarElement) -> Self {
        let x = f.complex();
        K0Doc {
            complex: ComplexDoc::of(x),
            values: f.values().iter().map(|(&c, &v)| (cell_key(x.cell(c)), v)).collect(),
        }
    }

    pub fn build(&self) -> Result<K0StarElement> {
        let x = Arc::new(self.complex.build()?);
        let mut values = BTreeMap::new();
        for (key, &v) in &self.values {
            values.insert(parse_cell_key(&x, key)?, v);
        }
        K0StarElement::new(&x, values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub source: ComplexDoc,
    pub target: ComplexDoc,
    pub vertex_map: BTreeMap<String, Vertex>,
}

impl MapDoc {
    pub fn of(f: &SimplicialMap) -> Self {
        let vertex_map = f.vertex_map.iter().map(|(v, w)| (v.to_string(), *w)).collect();
        MapDoc { source: ComplexDoc::of(&f.source), target: ComplexDoc::of(&f.target), vertex_map }
    }

    pub fn build(&self) -> Result<SimplicialMap> {
        let mut table = BTreeMap::new();
        for (v, &w) in &self.vertex_map {
            table.insert(v.trim().parse().map_err(|_| Error::Parse(format!("bad vertex {v:?}")))?, w);
        }
        SimplicialMap::new(self.source.build()?, self.target.build()?, table)
    }
}

/// A label is an integer, the string `"unclassified"`, or a map of
/// 3-spheres whose degree is the label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelDoc {
    Integer(Int),
    Text(String),
    Map(MapDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClutchDoc {
    pub base: ComplexDoc,
    pub n: usize,
    pub m: usize,
    pub label: LabelDoc,
}

impl ClutchDoc {
    pub fn of(a: &ClutchClass) -> Self {
        let label = match a.label() {
            ClutchLabel::Integer(d) => LabelDoc::Integer(d),
            ClutchLabel::Unclassified => LabelDoc::Text("unclassified".into()),
        };
        ClutchDoc { base: ComplexDoc::of(a.base()), n: a.n_low(), m: a.m_high(), label }
    }

    pub fn build(&self) -> Result<ClutchClass> {
        let base = Arc::new(self.base.build()?);
        let label = match &self.label {
            LabelDoc::Integer(d) => ClutchLabel::Integer(*d),
            LabelDoc::Text(t) if t == "unclassified" => ClutchLabel::Unclassified,
            LabelDoc::Text(t) => return Err(Error::Parse(format!("unknown label {t:?}"))),
            LabelDoc::Map(m) => ClutchLabel::Integer(label_from_map(&m.build()?)?),
        };
        ClutchClass::new(&base, self.n, self.m, label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clutch::sphere3_map;
    use crate::complex::sphere;

    fn round<T: Serialize + DeserializeOwned>(doc: &T) -> T {
        from_json(&to_json(doc)).unwrap()
    }

    #[test]
    fn complex_round_trip() {
        let x = sphere(2).unwrap();
        assert_eq!(round(&ComplexDoc::of(&x)).build().unwrap(), x);
        let isolated = ComplexDoc { vertices: vec![0, 1, 5], maximal_cells: vec![vec![0, 1]] };
        assert_eq!(isolated.build().unwrap().vertices(), &[0, 1, 5]);
        let unlisted = ComplexDoc { vertices: vec![0], maximal_cells: vec![vec![0, 1]] };
        assert!(matches!(unlisted.build(), Err(Error::Parse(_))));
    }

    #[test]
    fn class_round_trips() {
        let x = Arc::new(sphere(2).unwrap());
        let all = x.all_cells();
        let b = BundleClass::on(&x, &all, 1, vec![3]).unwrap();
        assert_eq!(round(&BundleDoc::of(&b)).build().unwrap(), b);

        let star = x.open_star(0).unwrap();
        let r = DimensionFunction::step(&all, &star, Dim::Inf, Dim::Finite(1));
        let off = all.difference(&star);
        let strata = [(1, BundleClass::on(&x, &off, 1, vec![]).unwrap())].into_iter().collect();
        let a = CuntzClass::new(&x, r, strata).unwrap();
        let text = to_json(&CuntzDoc::of(&a));
        assert!(text.contains("\"inf\""));
        assert_eq!(from_json::<CuntzDoc>(&text).unwrap().build().unwrap(), a);
    }

    #[test]
    fn family_profile_and_k0_round_trips() {
        let x = Arc::new(FacePoset::build(&[vec![0, 1]]).unwrap());
        let e = x.cell_set(&[vec![0, 1]]).unwrap();
        let f = RankOrderedFamily::trivial(&x, vec![(0, x.all_cells()), (1, e.clone())]);
        let g = round(&FamilyDoc::of(&f)).build().unwrap();
        assert_eq!(g.entries, f.entries);

        let idx = x.lookup(&[0, 1]).unwrap();
        let p = EigenvalueProfile::new([(idx, vec![Rational::new(1, 2)])].into_iter().collect()).unwrap();
        assert_eq!(round(&ProfileDoc::of(&x, &p)).build().unwrap().1, p);

        let k = K0StarElement::indicator(&x, &x.all_cells(), &e).unwrap();
        assert_eq!(round(&K0Doc::of(&k)).build().unwrap(), k);
    }

    #[test]
    fn clutch_and_map_round_trips() {
        let base = Arc::new(sphere(3).unwrap());
        let a = ClutchClass::new(&base, 1, 2, ClutchLabel::Integer(-2)).unwrap();
        assert_eq!(round(&ClutchDoc::of(&a)).build().unwrap(), a);
        let f = sphere3_map(2).unwrap();
        let by_map = ClutchDoc { base: ComplexDoc::of(&base), n: 1, m: 2, label: LabelDoc::Map(MapDoc::of(&f)) };
        assert_eq!(round(&by_map).build().unwrap().label(), ClutchLabel::Integer(2));
        assert_eq!(round(&MapDoc::of(&f)).build().unwrap(), f);
        let u = ClutchDoc { base: ComplexDoc::of(&base), n: 1, m: 3, label: LabelDoc::Text("unclassified".into()) };
        assert_eq!(round(&u).build().unwrap().label(), ClutchLabel::Unclassified);
    }
}
