use std::fs;

use logarr::arrangement::{parse_catalog_spec, Arrangement, ProjPoint};
use logarr::error::{Error, Result};
use logarr::field::{Field, ScalarText};

pub const CATALOG_SCHEME: &str = "catalog:";

/// Reads an arrangement document from a path, or builds a catalog entry
/// from `catalog:name` / `catalog:name(p1, p2)`.
pub fn load(source: &str) -> Result<Arrangement> {
    if let Some(spec) = source.strip_prefix(CATALOG_SCHEME) {
        return parse_catalog_spec(spec)?.build();
    }
    let text = fs::read_to_string(source).map_err(|e| Error::Io(format!("{source}: {e}")))?;
    Arrangement::from_json(&text)
}

/// Parses a point given as `x,y,z` (integers or `p/q`) or as a JSON array of
/// scalars, which also allows power-basis coordinates over a number field.
pub fn parse_point(field: &Field, text: &str) -> Result<ProjPoint> {
    let text = text.trim();
    let scalars: Vec<ScalarText> = if text.starts_with('[') {
        serde_json::from_str(text).map_err(|e| Error::BadScalar(format!("point `{text}`: {e}")))?
    } else {
        text.split(',')
            .map(|c| {
                let c = c.trim();
                c.parse::<i64>()
                    .map(ScalarText::Int)
                    .unwrap_or_else(|_| ScalarText::Rational(c.to_string()))
            })
            .collect()
    };
    let coords: [ScalarText; 3] = scalars
        .try_into()
        .map_err(|v: Vec<ScalarText>| Error::BadScalar(format!("a point needs 3 coordinates, got {}", v.len())))?;
    let elems = [0, 1, 2].map(|i| coords[i].decode(field));
    let [x, y, z] = elems;
    ProjPoint::from_elems(field, [x?, y?, z?]).ok_or_else(|| Error::BadScalar("the zero vector is not a point".into()))
}
