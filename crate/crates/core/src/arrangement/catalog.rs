//! Named arrangements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::point::{det3, ProjPoint};
use super::Arrangement;
use crate::error::{Error, Result};
use crate::field::{make_field, rational_from_int, Elem, Field};

/// Default coefficient bound for `generic_random`.
pub const DEFAULT_RANDOM_BOUND: i64 = 100;

const NAMES: &[(&str, &str)] = &[
    ("triangle", "the coordinate lines x, y, z"),
    ("pencil(m)", "m concurrent lines x - i y = 0"),
    ("near_pencil(m)", "m - 1 lines through [0:0:1] plus z = 0"),
    ("generic_random(m, seed[, bound])", "m random integer lines, no three concurrent"),
    ("random_grid(m, seed[, bound])", "m distinct lines with coefficients in [-bound, bound] (default 1)"),
    ("hesse12", "the 12 lines through the 9 flexes of a smooth cubic, over Q(w)"),
    ("dual_hesse9", "the 9 lines x^3 = y^3 = z^3 pairs, over Q(w)"),
    ("braid", "the A3 reflection arrangement (6 lines)"),
    ("b3", "the B3 reflection arrangement (9 lines)"),
];

/// `(name, description)` for every catalog entry.
pub fn catalog_names() -> &'static [(&'static str, &'static str)] {
    NAMES
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogSpec {
    pub name: String,
    pub params: Vec<i64>,
}

impl CatalogSpec {
    pub fn build(&self) -> Result<Arrangement> {
        catalog(&self.name, &self.params)
    }
}

/// Parses `name` or `name(p1, p2, ...)`.
pub fn parse_catalog_spec(text: &str) -> Result<CatalogSpec> {
    let text = text.trim();
    let (name, params) = match text.split_once('(') {
        None => (text, Vec::new()),
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::BadParams(format!("unterminated parameter list in `{text}`")))?;
            let params = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<i64>()
                        .map_err(|_| Error::BadParams(format!("`{s}` is not an integer")))
                })
                .collect::<Result<Vec<_>>>()?;
            (name.trim(), params)
        }
    };
    Ok(CatalogSpec {
        name: name.to_string(),
        params,
    })
}

pub fn catalog(name: &str, params: &[i64]) -> Result<Arrangement> {
    let q = Field::rationals();
    match name {
        "triangle" => {
            no_params(name, params)?;
            Arrangement::from_int_triples(&q, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        }
        "pencil" => {
            let m = count_param(name, params, 1)?;
            let lines: Vec<[i64; 3]> = (0..m as i64).map(|i| [1, -i, 0]).collect();
            Arrangement::from_int_triples(&q, &lines)
        }
        "near_pencil" => {
            let m = count_param(name, params, 2)?;
            let mut lines: Vec<[i64; 3]> = (0..m as i64 - 1).map(|i| [1, -i, 0]).collect();
            lines.push([0, 0, 1]);
            Arrangement::from_int_triples(&q, &lines)
        }
        "generic_random" => {
            let (m, seed, bound) = random_params(name, params, DEFAULT_RANDOM_BOUND)?;
            generic_random(m, seed, bound)
        }
        "random_grid" => {
            let (m, seed, bound) = random_params(name, params, 1)?;
            random_grid(m, seed, bound)
        }
        "hesse12" => {
            no_params(name, params)?;
            hesse12()
        }
        "dual_hesse9" => {
            no_params(name, params)?;
            dual_hesse9()
        }
        "braid" => {
            no_params(name, params)?;
            Arrangement::from_int_triples(
                &q,
                &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]],
            )
        }
        "b3" => {
            no_params(name, params)?;
            Arrangement::from_int_triples(
                &q,
                &[
                    [1, 0, 0],
                    [0, 1, 0],
                    [0, 0, 1],
                    [1, 1, 0],
                    [1, -1, 0],
                    [1, 0, 1],
                    [1, 0, -1],
                    [0, 1, 1],
                    [0, 1, -1],
                ],
            )
        }
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// The field ℚ(ω) with ω² + ω + 1 = 0.
pub fn eisenstein_field() -> Field {
    make_field(&[1, 1, 1].map(rational_from_int)).expect("x² + x + 1 is irreducible")
}

fn hesse12() -> Result<Arrangement> {
    let f = eisenstein_field();
    let w = f.generator();
    let powers: Vec<Elem> = (0..3).map(|i| f.pow(&w, i)).collect();
    let mut triples = vec![
        [f.one(), f.zero(), f.zero()],
        [f.zero(), f.one(), f.zero()],
        [f.zero(), f.zero(), f.one()],
    ];
    for i in 0..3 {
        for j in 0..3 {
            triples.push([f.one(), powers[i].clone(), powers[j].clone()]);
        }
    }
    Arrangement::from_triples(&f, triples)
}

fn dual_hesse9() -> Result<Arrangement> {
    let f = eisenstein_field();
    let w = f.generator();
    let mut triples = Vec::new();
    // y - ωⁱ z, x - ωⁱ z, x - ωⁱ y
    for (a, b) in [(1, 2), (0, 2), (0, 1)] {
        for i in 0..3 {
            let mut t = [f.zero(), f.zero(), f.zero()];
            t[a] = f.one();
            t[b] = f.neg(&f.pow(&w, i));
            triples.push(t);
        }
    }
    Arrangement::from_triples(&f, triples)
}

/// `m` random integer lines with coefficients in `[-bound, bound]`, rejected
/// until no three of them are concurrent (exact determinant test).
pub fn generic_random(m: usize, seed: u64, bound: i64) -> Result<Arrangement> {
    let q = Field::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines: Vec<ProjPoint> = Vec::with_capacity(m);
    let mut attempts = 0usize;
    while lines.len() < m {
        attempts += 1;
        if attempts > 10_000 * m.max(1) {
            return Err(Error::BadParams(format!(
                "could not place {m} lines in general position with bound {bound}"
            )));
        }
        let c: [i64; 3] = std::array::from_fn(|_| rng.random_range(-bound..=bound));
        let Some(l) = ProjPoint::from_ints(&q, c) else {
            continue;
        };
        if lines.contains(&l) {
            continue;
        }
        let concurrent = lines.iter().enumerate().any(|(i, a)| {
            lines[i + 1..]
                .iter()
                .any(|b| q.is_zero(&det3(&q, a.elems(), b.elems(), l.elems())))
        });
        if !concurrent {
            lines.push(l);
        }
    }
    Arrangement::new(&q, lines)
}

/// `m` distinct lines drawn uniformly from those with coefficients in
/// `[-bound, bound]`. Small boxes give arrangements with many coincidences.
pub fn random_grid(m: usize, seed: u64, bound: i64) -> Result<Arrangement> {
    let q = Field::rationals();
    let mut pool: Vec<ProjPoint> = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                if let Some(l) = ProjPoint::from_ints(&q, [a, b, c]) {
                    if !pool.contains(&l) {
                        pool.push(l);
                    }
                }
            }
        }
    }
    if m > pool.len() {
        return Err(Error::BadParams(format!(
            "only {} distinct lines have coefficients in [-{bound}, {bound}]",
            pool.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (chosen, _) = pool.partial_shuffle(&mut rng, m);
    Arrangement::new(&q, chosen.to_vec())
}

fn no_params(name: &str, params: &[i64]) -> Result<()> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(Error::BadParams(format!("`{name}` takes no parameters")))
    }
}

fn count_param(name: &str, params: &[i64], min: i64) -> Result<usize> {
    match params {
        [m] if *m >= min => Ok(*m as usize),
        _ => Err(Error::BadParams(format!("`{name}` takes one line count m >= {min}"))),
    }
}

fn random_params(name: &str, params: &[i64], default_bound: i64) -> Result<(usize, u64, i64)> {
    let (m, seed, bound) = match params {
        [m, seed] => (*m, *seed, default_bound),
        [m, seed, bound] => (*m, *seed, *bound),
        _ => return Err(Error::BadParams(format!("`{name}` takes (m, seed[, bound])"))),
    };
    if m < 1 || seed < 0 || bound < 1 {
        return Err(Error::BadParams(format!("`{name}` needs m >= 1, seed >= 0, bound >= 1")));
    }
    Ok((m as usize, seed as u64, bound))
}
