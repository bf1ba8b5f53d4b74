//! JSON documents for quivers with relations and complexes of projective bimodules.
//!
//! Coefficients are exact rationals written `"p/q"` (or `"p"`). Paths are lists of
//! arrow names in traversal order. A bimodule complex lists its summands per
//! cohomological degree; `diff["c"]` is the matrix from degree `c` to `c+1` with
//! rows indexed by targets and columns by sources, each cell a list of
//! `left_path ⊗ right_path` terms.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use cyroots_core::bimodcx::{tensor_normalize, ProjBimodComplex, Tensor};
use cyroots_core::exactlin::{Field, Scalar};
use cyroots_core::quiveralg::{build_algebra, PathBasisAlgebra, Quiver, Relation};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_MAX_LENGTH: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub name: String,
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub cdeg: i64,
    #[serde(default)]
    pub adeg: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTermDoc {
    pub coef: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTermDoc>>,
    /// bound on path length while reducing; the algebra must vanish beyond it
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandDoc {
    pub left: String,
    pub right: String,
    #[serde(default)]
    pub adeg: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryTermDoc {
    pub coef: String,
    pub left_path: Vec<String>,
    pub right_path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleDoc {
    pub terms: BTreeMap<String, Vec<SummandDoc>>,
    #[serde(default)]
    pub diff: BTreeMap<String, Vec<Vec<Vec<EntryTermDoc>>>>,
}

pub fn parse_field(s: &str) -> Result<Field, CliError> {
    match s {
        "rational" | "Q" | "q" | "0" => Ok(Field::Rational),
        _ => {
            let p: u64 = s.parse().map_err(|_| CliError::parse("--field", format!("expected 'rational' or a prime, got {:?}", s)))?;
            let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
            if !prime {
                return Err(CliError::parse("--field", format!("{} is not prime", p)));
            }
            Ok(Field::Prime(p))
        }
    }
}

pub fn field_name(f: Field) -> String {
    match f {
        Field::Rational => "rational".to_string(),
        Field::Prime(p) => p.to_string(),
    }
}

pub fn parse_scalar(field: Field, s: &str, at: &str) -> Result<Scalar, CliError> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = n.strip_prefix('+').unwrap_or(n);
    let num = BigInt::from_str(n).map_err(|_| CliError::parse(at, format!("bad coefficient {:?}", s)))?;
    let den = BigInt::from_str(d).map_err(|_| CliError::parse(at, format!("bad coefficient {:?}", s)))?;
    Scalar::from_ratio(field, &num, &den).ok_or_else(|| CliError::parse(at, format!("coefficient {:?} has a vanishing denominator", s)))
}

fn vertex(q: &Quiver, label: &str, at: &str) -> Result<usize, CliError> {
    q.vertex_index(label).ok_or_else(|| CliError::parse(at, format!("unknown vertex {:?}", label)))
}

fn path_of(q: &Quiver, names: &[String], at: &str) -> Result<Vec<usize>, CliError> {
    names
        .iter()
        .map(|n| q.arrow_index(n).ok_or_else(|| CliError::parse(at, format!("unknown arrow {:?}", n))))
        .collect()
}

impl QuiverDoc {
    pub fn to_algebra(&self, field: Field) -> Result<Arc<PathBasisAlgebra>, CliError> {
        let labels: Vec<&str> = self.vertices.iter().map(|s| s.as_str()).collect();
        let mut q = Quiver::new(&labels);
        for (k, a) in self.arrows.iter().enumerate() {
            let at = format!("arrows[{}]", k);
            let s = vertex(&q, &a.from, &at)?;
            let t = vertex(&q, &a.to, &at)?;
            q.add_graded_arrow(&a.name, s, t, a.cdeg, a.adeg);
        }
        let mut rels = Vec::new();
        for (k, r) in self.relations.iter().enumerate() {
            let mut terms = Vec::new();
            for (j, t) in r.iter().enumerate() {
                let at = format!("relations[{}][{}]", k, j);
                terms.push((parse_scalar(field, &t.coef, &at)?, path_of(&q, &t.path, &at)?));
            }
            rels.push(Relation { terms });
        }
        let a = build_algebra(field, &q, &rels, self.max_length.unwrap_or(DEFAULT_MAX_LENGTH))
            .map_err(|e| CliError::parse("algebra", e.to_string()))?;
        Ok(Arc::new(a))
    }

    pub fn from_algebra(a: &PathBasisAlgebra) -> Result<QuiverDoc, CliError> {
        let q = a.quiver.as_ref().ok_or_else(|| CliError::Unsupported("algebra has no quiver presentation".into()))?;
        let name = |k: usize| q.arrows[k].name.clone();
        let arrows = q
            .arrows
            .iter()
            .map(|ar| ArrowDoc {
                name: ar.name.clone(),
                from: q.vertices[ar.source].clone(),
                to: q.vertices[ar.target].clone(),
                cdeg: ar.cdeg,
                adeg: ar.adeg,
            })
            .collect();
        let relations = a
            .relations
            .iter()
            .map(|r| r.terms.iter().map(|(c, p)| RelationTermDoc { coef: c.to_string(), path: p.iter().map(|&k| name(k)).collect() }).collect())
            .collect();
        let longest = a.basis.iter().filter_map(|b| b.path.as_ref().map(|p| p.len())).max().unwrap_or(0);
        let max_length = if longest + 1 > DEFAULT_MAX_LENGTH { Some(longest + 1) } else { None };
        Ok(QuiverDoc { vertices: q.vertices.clone(), arrows, relations, max_length })
    }
}

fn degree_key(c: i64) -> String {
    c.to_string()
}

impl BimoduleDoc {
    pub fn from_complex(x: &ProjBimodComplex) -> Result<BimoduleDoc, CliError> {
        let a = &*x.base;
        let q = a.quiver.as_ref().ok_or_else(|| CliError::Unsupported("algebra has no quiver presentation".into()))?;
        let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, s) in x.summands.iter().enumerate() {
            by_degree.entry(s.cdeg).or_default().push(k);
        }
        let mut terms = BTreeMap::new();
        let mut position = vec![0usize; x.len()];
        for (c, ks) in &by_degree {
            let mut list = Vec::new();
            for (i, &k) in ks.iter().enumerate() {
                let s = &x.summands[k];
                position[k] = i;
                list.push(SummandDoc { left: q.vertices[s.left].clone(), right: q.vertices[s.right].clone(), adeg: s.adeg });
            }
            terms.insert(degree_key(*c), list);
        }
        let path_names = |b: usize| -> Result<Vec<String>, CliError> {
            let p = a.basis[b].path.as_ref().ok_or_else(|| CliError::Unsupported("basis element is not a path".into()))?;
            Ok(p.iter().map(|&k| q.arrows[k].name.clone()).collect())
        };
        let mut diff = BTreeMap::new();
        for (c, srcs) in &by_degree {
            let Some(tgts) = by_degree.get(&(c + 1)) else { continue };
            let mut m = vec![vec![Vec::new(); srcs.len()]; tgts.len()];
            let mut any = false;
            for (&(t, s), e) in &x.diff {
                if x.summands[s].cdeg != *c {
                    continue;
                }
                let cell = &mut m[position[t]][position[s]];
                for (l, r, coef) in e {
                    cell.push(EntryTermDoc { coef: coef.to_string(), left_path: path_names(*l)?, right_path: path_names(*r)? });
                    any = true;
                }
            }
            if any {
                diff.insert(degree_key(*c), m);
            }
        }
        Ok(BimoduleDoc { terms, diff })
    }

    pub fn to_complex(&self, a: &Arc<PathBasisAlgebra>) -> Result<ProjBimodComplex, CliError> {
        let q = a.quiver.as_ref().ok_or_else(|| CliError::Unsupported("algebra has no quiver presentation".into()))?;
        let f = a.field;
        let mut x = ProjBimodComplex::new(a.clone());
        let mut index: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (key, list) in &self.terms {
            let c: i64 = key.parse().map_err(|_| CliError::parse("terms", format!("degree key {:?} is not an integer", key)))?;
            for (i, s) in list.iter().enumerate() {
                let at = format!("terms[{}][{}]", key, i);
                let l = vertex(q, &s.left, &at)?;
                let r = vertex(q, &s.right, &at)?;
                let k = x.add_summand(l, r, c, s.adeg);
                index.entry(c).or_default().push(k);
            }
        }
        for (key, rows) in &self.diff {
            let c: i64 = key.parse().map_err(|_| CliError::parse("diff", format!("degree key {:?} is not an integer", key)))?;
            let empty = Vec::new();
            let srcs = index.get(&c).unwrap_or(&empty);
            let tgts = index.get(&(c + 1)).unwrap_or(&empty);
            if rows.len() != tgts.len() || rows.iter().any(|r| r.len() != srcs.len()) {
                return Err(CliError::parse(
                    &format!("diff[{}]", key),
                    format!("expected a {}x{} matrix", tgts.len(), srcs.len()),
                ));
            }
            for (ti, row) in rows.iter().enumerate() {
                for (si, cell) in row.iter().enumerate() {
                    if cell.is_empty() {
                        continue;
                    }
                    let (t, s) = (tgts[ti], srcs[si]);
                    let (ts, ss) = (x.summands[t], x.summands[s]);
                    let mut tensor: Tensor = Vec::new();
                    for (j, term) in cell.iter().enumerate() {
                        let at = format!("diff[{}][{}][{}][{}]", key, ti, si, j);
                        let coef = parse_scalar(f, &term.coef, &at)?;
                        let lp = path_of(q, &term.left_path, &at)?;
                        let rp = path_of(q, &term.right_path, &at)?;
                        // left factor in e_{left(s)}Ae_{left(t)}, right factor in e_{right(t)}Ae_{right(s)}
                        let ends_ok = |p: &[usize], src: usize, tgt: usize| match q.path_ends(p) {
                            Some((u, v)) => u == src && v == tgt,
                            None => p.is_empty() && src == tgt,
                        };
                        if !ends_ok(&lp, ts.left, ss.left) || !ends_ok(&rp, ss.right, ts.right) {
                            return Err(CliError::parse(&at, "path endpoints do not match the summands".into()));
                        }
                        let le = a.path_element(&lp, Some(ss.left)).unwrap_or_default();
                        let re = a.path_element(&rp, Some(ss.right)).unwrap_or_default();
                        for (li, lc) in &le {
                            for (ri, rc) in &re {
                                tensor.push((*li, *ri, coef.mul(lc).mul(rc)));
                            }
                        }
                    }
                    let tensor = tensor_normalize(f, tensor);
                    if !tensor.is_empty() {
                        x.add_entry(t, s, &tensor);
                    }
                }
            }
        }
        let rep = x.validate();
        if !rep.is_valid() {
            return Err(CliError::parse("bimodule", rep.violations.join("; ")));
        }
        Ok(x)
    }
}
