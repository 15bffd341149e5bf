//! JSON file formats. Field elements are canonical strings ("2", "2/3",
//! "t+1"); vectors are lists of them and matrices lists of rows.

use serde::{Deserialize, Serialize};

use crate::algebra::{format_presentation, parse_presentation, Algebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::flag::{CatalogEntry, ClassifiedFamily, FlagDatum};
use crate::galois::{ElementData, FiniteGroup};
use crate::linalg::{Matrix, Vector};
use crate::unified::{AxiomReport, Bilinear, CrossedProductInput, ExtendingDatum, GroupTable, MatchedPair};

pub type JsonVec = Vec<String>;
pub type JsonMatrix = Vec<Vec<String>>;
pub type JsonTensor = Vec<Vec<Vec<String>>>;

pub fn vec_to_json(f: &Field, v: &[crate::field::Elem]) -> JsonVec {
    v.iter().map(|x| f.format(x)).collect()
}

pub fn vec_from_json(f: &Field, v: &[String], len: usize) -> Result<Vector> {
    if v.len() != len {
        return Err(Error::ShapeMismatch(format!("expected a vector of length {len}, got {}", v.len())));
    }
    v.iter().map(|s| f.parse_elem(s)).collect()
}

pub fn matrix_to_json(f: &Field, m: &Matrix) -> JsonMatrix {
    m.rows_vec().iter().map(|r| vec_to_json(f, r)).collect()
}

pub fn matrix_from_json(f: &Field, rows: &[Vec<String>], nrows: usize, ncols: usize) -> Result<Matrix> {
    if rows.len() != nrows {
        return Err(Error::ShapeMismatch(format!("expected {nrows} rows, got {}", rows.len())));
    }
    let rows: Vec<Vector> = rows.iter().map(|r| vec_from_json(f, r, ncols)).collect::<Result<_>>()?;
    Ok(Matrix::from_rows(f, ncols, &rows))
}

fn tensor_to_json(f: &Field, b: &Bilinear) -> JsonTensor {
    b.tensor().iter().map(|row| row.iter().map(|v| vec_to_json(f, v)).collect()).collect()
}

fn tensor_from_json(f: &Field, t: &JsonTensor, left: usize, right: usize, out: usize) -> Result<Bilinear> {
    if t.len() != left || t.iter().any(|r| r.len() != right) {
        return Err(Error::ShapeMismatch(format!("expected a {left} x {right} tensor")));
    }
    let parsed: Vec<Vec<Vector>> = t
        .iter()
        .map(|row| row.iter().map(|v| vec_from_json(f, v, out)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Bilinear::from_tensor(left, right, out, parsed)
}

/// `{"field", "dim", "unit", "table"}`; on input a `"presentation"` string
/// may replace `dim`, `unit` and `table`. The table wins when both are given.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraJson {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<JsonVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<JsonTensor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
}

impl AlgebraJson {
    pub fn from_algebra(a: &Algebra) -> Self {
        let f = a.field();
        AlgebraJson {
            field: f.to_string(),
            dim: Some(a.dim()),
            unit: Some(vec_to_json(f, a.unit())),
            table: Some(a.table().iter().map(|row| row.iter().map(|v| vec_to_json(f, v)).collect()).collect()),
            presentation: None,
        }
    }

    /// The field named in the file, unless `field` overrides it.
    pub fn field(&self, field: Option<&Field>) -> Result<Field> {
        match field {
            Some(f) => Ok(f.clone()),
            None => Field::parse(&self.field),
        }
    }

    /// Parses the structure constants; validity is not checked here.
    pub fn to_algebra(&self, field: Option<&Field>) -> Result<Algebra> {
        let f = self.field(field)?;
        let (Some(dim), Some(unit), Some(table)) = (self.dim, &self.unit, &self.table) else {
            return match &self.presentation {
                Some(p) => parse_presentation(&f, p),
                None => Err(Error::Parse("algebra needs either a presentation or dim, unit and table".into())),
            };
        };
        let unit = vec_from_json(&f, unit, dim)?;
        if table.len() != dim || table.iter().any(|r| r.len() != dim) {
            return Err(Error::ShapeMismatch(format!("table must be {dim} x {dim}")));
        }
        let table: Vec<Vec<Vector>> = table
            .iter()
            .map(|row| row.iter().map(|v| vec_from_json(&f, v, dim)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        Algebra::new(f, dim, table, unit)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DatumJson {
    pub algebra: AlgebraJson,
    pub v_dim: usize,
    pub lact: JsonTensor,
    pub ract: JsonTensor,
    pub lhar: JsonTensor,
    pub rhar: JsonTensor,
    pub cocycle: JsonTensor,
    pub vmult: JsonTensor,
}

impl DatumJson {
    pub fn from_datum(d: &ExtendingDatum) -> Self {
        let f = d.field();
        DatumJson {
            algebra: AlgebraJson::from_algebra(&d.a),
            v_dim: d.v_dim,
            lact: tensor_to_json(f, &d.lact),
            ract: tensor_to_json(f, &d.ract),
            lhar: tensor_to_json(f, &d.lhar),
            rhar: tensor_to_json(f, &d.rhar),
            cocycle: tensor_to_json(f, &d.cocycle),
            vmult: tensor_to_json(f, &d.vmult),
        }
    }

    pub fn to_datum(&self, field: Option<&Field>) -> Result<ExtendingDatum> {
        let a = self.algebra.to_algebra(field)?;
        let f = a.field().clone();
        let (n, m) = (a.dim(), self.v_dim);
        Ok(ExtendingDatum {
            lact: tensor_from_json(&f, &self.lact, m, n, m)?,
            ract: tensor_from_json(&f, &self.ract, m, n, n)?,
            lhar: tensor_from_json(&f, &self.lhar, n, m, n)?,
            rhar: tensor_from_json(&f, &self.rhar, n, m, m)?,
            cocycle: tensor_from_json(&f, &self.cocycle, m, m, n)?,
            vmult: tensor_from_json(&f, &self.vmult, m, m, m)?,
            a,
            v_dim: m,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatchedPairJson {
    pub algebra: AlgebraJson,
    pub v_dim: usize,
    pub vmult: JsonTensor,
    pub lact: JsonTensor,
    pub ract: JsonTensor,
    pub lhar: JsonTensor,
    pub rhar: JsonTensor,
}

impl MatchedPairJson {
    pub fn from_pair(mp: &MatchedPair) -> Self {
        let f = mp.a.field();
        MatchedPairJson {
            algebra: AlgebraJson::from_algebra(&mp.a),
            v_dim: mp.v_dim,
            vmult: tensor_to_json(f, &mp.vmult),
            lact: tensor_to_json(f, &mp.lact),
            ract: tensor_to_json(f, &mp.ract),
            lhar: tensor_to_json(f, &mp.lhar),
            rhar: tensor_to_json(f, &mp.rhar),
        }
    }

    pub fn to_pair(&self, field: Option<&Field>) -> Result<MatchedPair> {
        let a = self.algebra.to_algebra(field)?;
        let f = a.field().clone();
        let (n, m) = (a.dim(), self.v_dim);
        Ok(MatchedPair {
            vmult: tensor_from_json(&f, &self.vmult, m, m, m)?,
            lact: tensor_from_json(&f, &self.lact, m, n, m)?,
            ract: tensor_from_json(&f, &self.ract, m, n, n)?,
            lhar: tensor_from_json(&f, &self.lhar, n, m, n)?,
            rhar: tensor_from_json(&f, &self.rhar, n, m, m)?,
            a,
            v_dim: m,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupTableJson {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CrossedJson {
    pub algebra: AlgebraJson,
    pub group: GroupTableJson,
    /// One matrix per group element, in label order.
    pub action: Vec<JsonMatrix>,
    /// cocycle[g][h] = f(g, h).
    pub cocycle: Vec<Vec<JsonVec>>,
}

impl CrossedJson {
    pub fn to_input(&self, field: Option<&Field>) -> Result<CrossedProductInput> {
        let a = self.algebra.to_algebra(field)?;
        let f = a.field().clone();
        let n = a.dim();
        let group = GroupTable::new(self.group.labels.clone(), self.group.table.clone())?;
        let action = self.action.iter().map(|m| matrix_from_json(&f, m, n, n)).collect::<Result<_>>()?;
        let cocycle = self
            .cocycle
            .iter()
            .map(|row| row.iter().map(|v| vec_from_json(&f, v, n)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        Ok(CrossedProductInput { a, group, action, cocycle })
    }
}

/// An algebra with a subalgebra basis and a complement basis.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FactorizeJson {
    pub algebra: AlgebraJson,
    pub a_basis: Vec<JsonVec>,
    pub v_basis: Vec<JsonVec>,
}

impl FactorizeJson {
    pub fn parse(&self, field: Option<&Field>) -> Result<(Algebra, Vec<Vector>, Vec<Vector>)> {
        let e = self.algebra.to_algebra(field)?;
        let f = e.field().clone();
        let n = e.dim();
        let a = self.a_basis.iter().map(|v| vec_from_json(&f, v, n)).collect::<Result<_>>()?;
        let v = self.v_basis.iter().map(|v| vec_from_json(&f, v, n)).collect::<Result<_>>()?;
        Ok((e, a, v))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FlagDatumJson {
    #[serde(rename = "Lambda")]
    pub big_lambda: JsonVec,
    pub lambda: JsonVec,
    #[serde(rename = "D")]
    pub big_d: JsonMatrix,
    pub d: JsonMatrix,
    pub a0: JsonVec,
    pub u: String,
}

impl FlagDatumJson {
    pub fn from_datum(f: &Field, fd: &FlagDatum) -> Self {
        FlagDatumJson {
            big_lambda: vec_to_json(f, &fd.big_lambda.values),
            lambda: vec_to_json(f, &fd.lambda.values),
            big_d: matrix_to_json(f, &fd.big_d),
            d: matrix_to_json(f, &fd.d),
            a0: vec_to_json(f, &fd.a0),
            u: f.format(&fd.u),
        }
    }

    pub fn to_datum(&self, a: &Algebra) -> Result<FlagDatum> {
        let f = a.field();
        let n = a.dim();
        Ok(FlagDatum {
            big_lambda: crate::algebra::Character { values: vec_from_json(f, &self.big_lambda, n)? },
            lambda: crate::algebra::Character { values: vec_from_json(f, &self.lambda, n)? },
            big_d: matrix_from_json(f, &self.big_d, n, n)?,
            d: matrix_from_json(f, &self.d, n, n)?,
            a0: vec_from_json(f, &self.a0, n)?,
            u: f.parse_elem(&self.u)?,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StatusJson {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportJson {
    pub all_hold: bool,
    pub statuses: Vec<StatusJson>,
}

impl ReportJson {
    pub fn from_report(r: &AxiomReport) -> Self {
        ReportJson {
            all_hold: r.all_hold(),
            statuses: r
                .statuses
                .iter()
                .map(|s| StatusJson { name: s.name.to_string(), holds: s.holds, witness: s.witness.clone() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ElementJson {
    /// Matrix of the element acting on B.
    pub matrix: JsonMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<JsonMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<JsonMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<JsonVec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupJson {
    pub order: usize,
    pub abelian: bool,
    pub description: String,
    pub element_orders: Vec<usize>,
    pub elements: Vec<ElementJson>,
    pub table: Vec<Vec<usize>>,
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        let f = &g.field;
        let elements = g
            .elements
            .iter()
            .map(|e| {
                let mut el =
                    ElementJson { matrix: matrix_to_json(f, &e.action), r: None, sigma: None, alpha: None, q: None };
                match &e.data {
                    ElementData::Automorphism => {}
                    ElementData::Pair { r, sigma } => {
                        el.r = Some(matrix_to_json(f, r));
                        el.sigma = Some(matrix_to_json(f, sigma));
                    }
                    ElementData::Codim1 { alpha, q } => {
                        el.alpha = Some(vec_to_json(f, alpha));
                        el.q = Some(f.format(q));
                    }
                }
                el
            })
            .collect();
        GroupJson {
            order: g.order(),
            abelian: g.is_abelian(),
            description: g.describe(),
            element_orders: g.element_orders(),
            elements,
            table: g.table.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MemberJson {
    pub datum: FlagDatumJson,
    pub q: String,
    pub alpha: JsonVec,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassJson {
    pub representative: FlagDatumJson,
    pub extension: AlgebraJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    pub members: Vec<MemberJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassifiedJson {
    pub mode: String,
    pub datum_count: usize,
    pub class_count: usize,
    pub classes: Vec<ClassJson>,
}

impl ClassifiedJson {
    pub fn from_family(a: &Algebra, fam: &ClassifiedFamily) -> Self {
        let f = a.field();
        let classes = fam
            .classes
            .iter()
            .map(|c| {
                let e =
                    crate::flag::flag_extension(a, &c.representative).expect("enumerated datums pass the flag check");
                ClassJson {
                    representative: FlagDatumJson::from_datum(f, &c.representative),
                    presentation: format_presentation(&e),
                    extension: AlgebraJson::from_algebra(&e),
                    members: c
                        .members
                        .iter()
                        .map(|(m, cert)| MemberJson {
                            datum: FlagDatumJson::from_datum(f, m),
                            q: f.format(&cert.q),
                            alpha: vec_to_json(f, &cert.alpha),
                        })
                        .collect(),
                }
            })
            .collect();
        ClassifiedJson {
            mode: fam.mode.as_str().into(),
            datum_count: fam.datum_count(),
            class_count: fam.classes.len(),
            classes,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CatalogEntryJson {
    pub name: String,
    pub presentation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized: Option<String>,
    pub algebra: Option<AlgebraJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CatalogEntryJson {
    pub fn from_entry(e: &CatalogEntry) -> Self {
        CatalogEntryJson {
            name: e.name.clone(),
            presentation: e.presentation.clone(),
            normalized: e.normalized.clone(),
            algebra: e.algebra.as_ref().map(AlgebraJson::from_algebra),
            note: e.note.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OracleClassJson {
    pub representative: AlgebraJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OracleReportJson {
    pub field: String,
    pub dim: usize,
    pub total_tables: String,
    pub valid: usize,
    pub classes: Vec<OracleClassJson>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::enumerate_flag_datums;

    #[test]
    fn algebra_round_trip() {
        for spec in ["GF(3)", "GF(4)", "Q", "GF(2)(t)"] {
            let f = Field::parse(spec).unwrap();
            let a = Algebra::two_dim(&f, &f.one(), &f.one());
            let j = serde_json::to_string(&AlgebraJson::from_algebra(&a)).unwrap();
            let back: AlgebraJson = serde_json::from_str(&j).unwrap();
            assert_eq!(back.to_algebra(None).unwrap(), a, "{spec}");
        }
    }

    #[test]
    fn presentation_input() {
        let j = r#"{"field": "GF(2)", "presentation": "x^2 = 0, y^2 = y, xy = x, yx = 0"}"#;
        let a: AlgebraJson = serde_json::from_str(j).unwrap();
        assert_eq!(a.to_algebra(None).unwrap().dim(), 3);
    }

    #[test]
    fn flag_datum_round_trip() {
        let f = Field::prime(3).unwrap();
        let k01 = Algebra::two_dim(&f, &f.zero(), &f.one());
        for fd in enumerate_flag_datums(&k01).unwrap().iter().take(10) {
            let j = serde_json::to_value(FlagDatumJson::from_datum(&f, fd)).unwrap();
            assert!(j.get("Lambda").is_some() && j.get("D").is_some());
            let back: FlagDatumJson = serde_json::from_value(j).unwrap();
            assert_eq!(&back.to_datum(&k01).unwrap(), fd);
        }
    }

    #[test]
    fn datum_round_trip() {
        let f = Field::prime(2).unwrap();
        let k = Algebra::ground(&f);
        let d = ExtendingDatum::with_characters(&k, 2, &[f.one()], &[f.one()]);
        let j = serde_json::to_string(&DatumJson::from_datum(&d)).unwrap();
        let back: DatumJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_datum(None).unwrap(), d);
    }
}
