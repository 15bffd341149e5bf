//! The named 2- and 3-dimensional normal forms, instantiated with a field's
//! class representatives.

use crate::algebra::{format_presentation, parse_presentation, Algebra};
use crate::error::{Error, Result};
use crate::field::{class_system, class_system_bounded, ClassSystem, Elem, Field};

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    /// The template with its parameter substituted.
    pub presentation: String,
    /// Presentation regenerated from the structure constants.
    pub normalized: Option<String>,
    pub algebra: Option<Algebra>,
    pub note: Option<String>,
}

impl CatalogEntry {
    fn build(f: &Field, name: String, presentation: String) -> Result<Self> {
        let algebra = parse_presentation(f, &presentation)?;
        debug_assert!(algebra.is_valid());
        Ok(CatalogEntry {
            name,
            presentation,
            normalized: format_presentation(&algebra),
            algebra: Some(algebra),
            note: None,
        })
    }

    fn family(name: &str, template: &str, note: &str) -> Self {
        CatalogEntry {
            name: name.into(),
            presentation: template.into(),
            normalized: None,
            algebra: None,
            note: Some(note.into()),
        }
    }
}

const A0: [(&str, &str); 5] = [
    ("A0_1", "x^2 = 0, y^2 = y, xy = x, yx = 0"),
    ("A0_2", "x^2 = 0, y^2 = y, xy = yx = 0"),
    ("A0_3", "x^2 = 0, y^2 = 0, xy = yx = 0"),
    ("A0_4", "x^2 = 0, y^2 = x, xy = yx = 0"),
    ("A0_5", "x^2 = 0, y^2 = x + y, xy = yx = 0"),
];
const A0_D: (&str, &str) = ("A0", "x^2 = 0, y^2 = {p} x, xy = yx = 0");
const A1: [(&str, &str); 5] = [
    ("A1_1", "x^2 = x, y^2 = 0, xy = yx = 0"),
    ("A1_2", "x^2 = x, y^2 = x - 1, xy = yx = 0"),
    ("A1_3", "x^2 = x, y^2 = 0, xy = yx = y"),
    ("A1_4", "x^2 = x, y^2 = x, xy = yx = y"),
    ("A1_5", "x^2 = x, y^2 = 0, xy = y, yx = 0"),
];
const B: [(&str, &str); 2] =
    [("B1", "x^2 = x, y^2 = {p}(x - 1), xy = yx = 0"), ("B2", "x^2 = x, y^2 = {p} x, xy = yx = y")];
const C1: [(&str, &str); 5] = [
    ("C1_1", "x^2 = x, y^2 = 0, xy = yx = 0"),
    // from the datum D = d = 0, a0 = c + c x, u = 1 over x^2 = x
    ("C1_2", "x^2 = x, y^2 = {p} + {p} x + y, xy = yx = 0"),
    ("C1_3", "x^2 = x, y^2 = 0, xy = yx = y"),
    ("C1_4", "x^2 = x, y^2 = y + {p} x, xy = yx = y"),
    ("C1_5", "x^2 = x, y^2 = 0, xy = y, yx = 0"),
];
const D: [(&str, &str); 2] =
    [("D1", "x^2 = x, y^2 = {p}(x + 1), xy = yx = 0"), ("D2", "x^2 = x, y^2 = {p} x, xy = yx = y")];

const Q_NOTE: &str = "S is infinite over Q; supply a bound to instantiate";

fn instantiate(f: &Field, (name, template): (&str, &str), param: &Elem) -> Result<CatalogEntry> {
    let p = f.format(param);
    let presentation = template.replace("{p}", &format!("({p})"));
    CatalogEntry::build(f, format!("{name}({p})"), presentation)
}

fn fixed(f: &Field, (name, template): (&str, &str)) -> Result<CatalogEntry> {
    CatalogEntry::build(f, name.into(), template.into())
}

/// Class system for a catalog request: complete for finite fields, bounded
/// for GF(2)(t) and for Q when a bound is given, `None` for unbounded Q.
fn classes(f: &Field, bound: Option<usize>) -> Result<Option<ClassSystem>> {
    match bound {
        None if f.characteristic() == 0 => Ok(None),
        Some(b) if !f.is_finite() => Ok(Some(class_system_bounded(f, b)?)),
        _ => Ok(Some(class_system(f)?)),
    }
}

fn truncation_note(cs: &ClassSystem) -> Option<String> {
    (!cs.complete).then(|| "class representatives listed up to the enumeration bound".to_string())
}

/// Representatives used for R: the indeterminate t when k != k^2 in
/// characteristic 2, nothing otherwise.
fn r_params(f: &Field) -> Vec<Elem> {
    if f.characteristic() == 2 && !f.is_finite() {
        f.generator().into_iter().collect()
    } else {
        Vec::new()
    }
}

/// The 2-dimensional normal forms k_(a,b): x^2 = a + b x.
pub fn paper_catalog_dim2(f: &Field, bound: Option<usize>) -> Result<Vec<CatalogEntry>> {
    let dim2 = |a: &Elem, b: &Elem| -> Result<CatalogEntry> {
        let (sa, sb) = (f.format(a), f.format(b));
        let rhs = match (f.is_zero(a), f.is_zero(b)) {
            (true, true) => "0".to_string(),
            (true, false) => format!("({sb}) x"),
            (false, true) => format!("({sa})"),
            (false, false) => format!("({sa}) + ({sb}) x"),
        };
        CatalogEntry::build(f, format!("k_({sa},{sb})"), format!("x^2 = {rhs}"))
    };
    let (zero, one) = (f.zero(), f.one());
    let mut out = vec![dim2(&zero, &zero)?];
    let cs = classes(f, bound)?;
    if f.characteristic() != 2 {
        out.push(dim2(&zero, &one)?);
        match &cs {
            None => out.push(CatalogEntry::family("k_(d,0)", "x^2 = d", Q_NOTE)),
            Some(cs) => {
                for d in &cs.s_reps {
                    let mut e = dim2(d, &zero)?;
                    e.note = truncation_note(cs);
                    out.push(e);
                }
            }
        }
    } else {
        let cs = cs.expect("char 2 fields have a class system");
        for c in &cs.t_reps {
            out.push(dim2(c, &one)?);
        }
        for delta in r_params(f) {
            let mut e = dim2(&delta, &zero)?;
            e.note = Some("delta := t".into());
            out.push(e);
        }
    }
    Ok(out)
}

/// The 3-dimensional supersolvable normal forms for this field's case.
pub fn paper_catalog_dim3(f: &Field, bound: Option<usize>) -> Result<Vec<CatalogEntry>> {
    let cs = classes(f, bound)?;
    let mut out: Vec<CatalogEntry> = A0.iter().map(|t| fixed(f, *t)).collect::<Result<_>>()?;
    let s_family = |out: &mut Vec<CatalogEntry>, templates: &[(&str, &str)]| -> Result<()> {
        match &cs {
            None => {
                for (name, t) in templates {
                    out.push(CatalogEntry::family(&format!("{name}(d)"), &t.replace("{p}", "d"), Q_NOTE));
                }
            }
            Some(cs) => {
                for d in &cs.s_reps {
                    for t in templates {
                        let mut e = instantiate(f, *t, d)?;
                        e.note = truncation_note(cs);
                        out.push(e);
                    }
                }
            }
        }
        Ok(())
    };
    s_family(&mut out, &[A0_D])?;
    if f.characteristic() != 2 {
        for t in A1 {
            out.push(fixed(f, t)?);
        }
        s_family(&mut out, &B)?;
    } else {
        let cs = cs.as_ref().ok_or(Error::InfiniteClassSet("T"))?;
        for t in &C1 {
            if t.1.contains("{p}") {
                for c in &cs.t_reps {
                    out.push(instantiate(f, *t, c)?);
                }
            } else {
                out.push(fixed(f, *t)?);
            }
        }
        for delta in r_params(f) {
            for t in D {
                let mut e = instantiate(f, t, &delta)?;
                e.note = Some("delta := t".into());
                out.push(e);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[CatalogEntry]) -> Vec<String> {
        v.iter().map(|e| e.name.clone()).collect()
    }

    #[test]
    fn gf2_dim3_names() {
        let f = Field::prime(2).unwrap();
        let cat = paper_catalog_dim3(&f, None).unwrap();
        let expected = [
            "A0_1", "A0_2", "A0_3", "A0_4", "A0_5", "C1_1", "C1_2(0)", "C1_2(1)", "C1_3", "C1_4(0)", "C1_4(1)", "C1_5",
        ];
        assert_eq!(names(&cat), expected);
        assert!(cat.iter().all(|e| e.algebra.as_ref().unwrap().is_valid()));
    }

    #[test]
    fn gf3_catalogs() {
        let f = Field::prime(3).unwrap();
        assert_eq!(names(&paper_catalog_dim2(&f, None).unwrap()), ["k_(0,0)", "k_(0,1)", "k_(2,0)"]);
        let cat = paper_catalog_dim3(&f, None).unwrap();
        assert_eq!(cat.len(), 13);
        assert_eq!(cat.iter().filter(|e| e.name.starts_with("A0")).count(), 6);
    }

    #[test]
    fn rationals_report_infinite_family() {
        let q = Field::rationals();
        let cat = paper_catalog_dim2(&q, None).unwrap();
        assert_eq!(cat.len(), 3);
        assert!(cat[2].algebra.is_none() && cat[2].note.is_some());
        let bounded = paper_catalog_dim2(&q, Some(3)).unwrap();
        assert!(bounded.iter().all(|e| e.algebra.is_some()));
    }

    #[test]
    fn rational_functions_include_delta_families() {
        let f = Field::gf2t();
        let cat = paper_catalog_dim3(&f, None).unwrap();
        assert!(cat.iter().any(|e| e.name == "D1(t)"));
        assert!(cat.iter().any(|e| e.name == "D2(t)"));
        assert!(cat.iter().all(|e| e.algebra.as_ref().is_some_and(|a| a.is_valid())));
    }
}
