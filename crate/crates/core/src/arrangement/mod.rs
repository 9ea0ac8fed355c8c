//! Line arrangements, their intersection lattice and combinatorial type.

pub mod catalog;
mod fingerprint;
mod lattice;
mod point;

pub use catalog::{catalog, catalog_names, parse_catalog_spec, CatalogSpec};
pub use fingerprint::{fingerprint, same_type, Fingerprint};
pub use lattice::{intersection_lattice, is_pencil, multiplicity_profile, LatticePoint, MultiplicityProfile};
pub use point::{det3, ProjLine, ProjPoint};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{make_field, CoordText, Elem, Field, Scalar, ScalarText};

/// An ordered list of pairwise distinct lines over one field.
///
/// Line `i` is `lines[i]`; the same triple read in the dual plane is the
/// point `zᵢ` of the dual configuration `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    field: Field,
    lines: Vec<ProjLine>,
}

impl Arrangement {
    pub fn new(field: &Field, lines: Vec<ProjLine>) -> Result<Arrangement> {
        if lines.is_empty() {
            return Err(Error::EmptyArrangement);
        }
        for (i, l) in lines.iter().enumerate() {
            if l.field() != field {
                return Err(Error::Field(crate::field::FieldError::FieldMismatch));
            }
            if let Some(j) = lines[..i].iter().position(|k| k == l) {
                return Err(Error::DuplicateLine { first: j, second: i });
            }
        }
        Ok(Arrangement {
            field: field.clone(),
            lines,
        })
    }

    /// Builds an arrangement from raw coordinate triples.
    pub fn from_triples(field: &Field, triples: Vec<[Elem; 3]>) -> Result<Arrangement> {
        let lines = triples
            .into_iter()
            .enumerate()
            .map(|(index, t)| ProjPoint::from_elems(field, t).ok_or(Error::ZeroVector { index }))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(field, lines)
    }

    pub fn from_int_triples(field: &Field, triples: &[[i64; 3]]) -> Result<Arrangement> {
        Arrangement::from_triples(field, triples.iter().map(|t| t.map(|c| field.from_int(c))).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> Result<&ProjLine> {
        self.lines.get(i).ok_or(Error::IndexOutOfRange { index: i, m: self.m() })
    }

    /// The dual configuration `Z`: the same triples, read as points.
    pub fn dual_points(&self) -> &[ProjPoint] {
        &self.lines
    }

    pub fn is_real(&self) -> bool {
        self.field.is_rational()
    }

    /// The arrangement with line `i` removed.
    pub fn delete(&self, i: usize) -> Result<Arrangement> {
        self.line(i)?;
        let mut lines = self.lines.clone();
        lines.remove(i);
        Arrangement::new(&self.field, lines)
    }

    /// The sub-arrangement on the given line indices, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<Arrangement> {
        let lines = indices
            .iter()
            .map(|&i| self.line(i).cloned())
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(&self.field, lines)
    }

    pub fn permute(&self, order: &[usize]) -> Result<Arrangement> {
        if order.len() != self.m() {
            return Err(Error::BadParams("permutation has the wrong length".into()));
        }
        self.subset(order)
    }

    /// Applies a projective change of coordinates: every line `ℓ` becomes `ℓ·M`.
    /// `M` must be invertible.
    pub fn transform(&self, m: &[[Elem; 3]; 3]) -> Result<Arrangement> {
        if self.field.is_zero(&det3(&self.field, &m[0], &m[1], &m[2])) {
            return Err(Error::BadParams("singular coordinate change".into()));
        }
        let lines = self
            .lines
            .iter()
            .map(|l| l.transform(m).expect("invertible map keeps lines nonzero"))
            .collect();
        Arrangement::new(&self.field, lines)
    }

    pub fn transform_ints(&self, m: [[i64; 3]; 3]) -> Result<Arrangement> {
        let f = &self.field;
        self.transform(&m.map(|row| row.map(|c| f.from_int(c))))
    }

    pub fn to_doc(&self) -> ArrangementDoc {
        let field = (!self.field.is_rational()).then(|| FieldDoc {
            minpoly: self
                .field
                .minpoly()
                .iter()
                .map(|c| CoordText::Rational(crate::field::format_rational(c)))
                .collect(),
        });
        ArrangementDoc {
            field,
            lines: self.lines.iter().map(|l| l.to_text().to_vec()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("documents serialise")
    }

    pub fn from_json(text: &str) -> Result<Arrangement> {
        let doc: ArrangementDoc =
            serde_json::from_str(text).map_err(|e| Error::BadDocument(e.to_string()))?;
        parse_arrangement(&doc)
    }
}

/// `{"field": {"minpoly": [...]} | null, "lines": [[s, s, s], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementDoc {
    #[serde(default)]
    pub field: Option<FieldDoc>,
    pub lines: Vec<Vec<ScalarText>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub minpoly: Vec<CoordText>,
}

pub fn parse_arrangement(doc: &ArrangementDoc) -> Result<Arrangement> {
    let field = match &doc.field {
        None => Field::rationals(),
        Some(fd) => {
            let coeffs = fd
                .minpoly
                .iter()
                .map(|c| {
                    let s = ScalarText::Coords(vec![c.clone()]);
                    s.decode(&Field::rationals()).map(|e| e[0].clone())
                })
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::BadField(e.to_string()))?;
            make_field(&coeffs).map_err(|e| Error::BadField(e.to_string()))?
        }
    };
    let mut triples = Vec::with_capacity(doc.lines.len());
    for (index, line) in doc.lines.iter().enumerate() {
        if line.len() != 3 {
            return Err(Error::BadDimension { index, len: line.len() });
        }
        let coords = line
            .iter()
            .map(|s| Scalar::parse(&field, s).map(Scalar::into_elem))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::BadScalar(format!("line {index}: {e}")))?;
        let [a, b, c]: [Elem; 3] = coords.try_into().expect("three coordinates");
        triples.push([a, b, c]);
    }
    Arrangement::from_triples(&field, triples)
}
