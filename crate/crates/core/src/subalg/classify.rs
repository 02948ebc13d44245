use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::{rat, ParamAssignment, Poly, PolyRing, Rational};

use super::{buchberger, dij, GroebnerLimits, GroebnerStats, SubalgError};

/// The constraints that remain after solving every `D_{2,j}`.
const SECONDARY: [(i64, i64); 4] = [(3, 4), (3, 5), (3, 6), (4, 5)];

/// `Q[a_top > ... > a_2]` (lex priority follows the listed order).
pub fn generic_ring(top: i64) -> Arc<PolyRing> {
    let names: Vec<String> = (2..=top).rev().map(|k| format!("a{k}")).collect();
    PolyRing::new(&names)
}

fn vars(ring: &Arc<PolyRing>, range: std::ops::RangeInclusive<i64>) -> BTreeMap<i64, Poly> {
    range
        .map(|k| (k, Poly::var(ring, &format!("a{k}")).expect("variable exists")))
        .collect()
}

/// `a_2, ..., a_kmax` as polynomials in `Q[a4, a3, a2]`, using
/// `a_{j+2} = ((j-1) a_2 a_{j+1} - a_3 a_j) / (j-2)` for `j >= 3`.
pub fn recursion(kmax: i64) -> BTreeMap<i64, Poly> {
    let ring = generic_ring(4);
    let mut a = vars(&ring, 2..=4);
    for k in 5..=kmax {
        let j = k - 2;
        let next = &(&a[&2] * &a[&(j + 1)]).scale(&rat(j - 1, 1)) - &(&a[&3] * &a[&j]);
        a.insert(k, next.scale(&rat(1, j - 2)));
    }
    a
}

/// Outcome of the codimension-one classification.
#[derive(Clone, Debug)]
pub struct Classification {
    pub kmax: i64,
    /// `a_k` for `k >= 5` in terms of `a2, a3, a4`.
    pub recursion: BTreeMap<i64, Poly>,
    /// `D_{i,j}` after substituting the recursion.
    pub constraints: Vec<((i64, i64), Poly)>,
    /// Reduced lex basis over `u > a4 > a3 > a2` including `u a2 a3 a4 - 1`.
    pub saturated_basis: Vec<Poly>,
    /// Reduced lex basis over `a4 > a3 > a2` of the constraints alone.
    pub unsaturated_basis: Vec<Poly>,
    pub a3_reduces: bool,
    pub a4_reduces: bool,
    /// `a3^6 - a3^5 a2^2` lies in the unsaturated ideal.
    pub power_relation_reduces: bool,
    /// Every `D_{i,j}` with indices up to `kmax` vanishes at `a_k = a2^{k-1}`.
    pub converse: bool,
    pub saturated_stats: GroebnerStats,
    pub unsaturated_stats: GroebnerStats,
}

impl Classification {
    pub fn passed(&self) -> bool {
        self.a3_reduces && self.a4_reduces && self.power_relation_reduces && self.converse
    }
}

fn converse_holds(kmax: i64) -> Result<bool, SubalgError> {
    let ring = PolyRing::new(&["a2"]);
    let a2 = Poly::var(&ring, "a2")?;
    let powers: BTreeMap<i64, Poly> = (2..=kmax).map(|k| (k, a2.pow((k - 1) as u32))).collect();
    for i in 2..=kmax {
        for j in (i + 1)..=kmax {
            if i + j <= kmax && !dij(i, j, &powers)?.is_zero() {
                return Ok(false);
            }
        }
    }
    // the recursion reproduces the powers as well
    let images = [a2.pow(3), a2.pow(2), a2.clone()];
    for (k, p) in recursion(kmax) {
        if p.compose(&ring, &images)? != powers[&k] {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn classify_codim_one(kmax: i64, limits: &GroebnerLimits) -> Result<Classification, SubalgError> {
    assert!(kmax >= 9, "the classification needs a_2 .. a_9");
    let rec = recursion(kmax);
    let mut constraints = Vec::new();
    for (i, j) in SECONDARY {
        constraints.push(((i, j), dij(i, j, &rec)?));
    }
    let small = generic_ring(4);
    let sat = PolyRing::new(&["u", "a4", "a3", "a2"]);
    let gens: Vec<Poly> = constraints.iter().map(|(_, p)| p.clone()).collect();
    let (unsaturated_basis, unsaturated_stats) = buchberger(&gens, limits)?;

    let v = |name: &str| Poly::var(&sat, name).expect("variable exists");
    let mut sat_gens = Vec::new();
    for g in &gens {
        sat_gens.push(g.to_ring(&sat)?);
    }
    sat_gens.push(&(&(&(&v("u") * &v("a2")) * &v("a3")) * &v("a4")) - &Poly::one(&sat));
    let (saturated_basis, saturated_stats) = buchberger(&sat_gens, limits)?;

    let a3_target = &v("a3") - &v("a2").pow(2);
    let a4_target = &v("a4") - &v("a2").pow(3);
    let w = |name: &str| Poly::var(&small, name).expect("variable exists");
    let relation = &w("a3").pow(6) - &(&w("a3").pow(5) * &w("a2").pow(2));

    Ok(Classification {
        kmax,
        constraints,
        a3_reduces: a3_target.reduce(&saturated_basis)?.is_zero(),
        a4_reduces: a4_target.reduce(&saturated_basis)?.is_zero(),
        power_relation_reduces: relation.reduce(&unsaturated_basis)?.is_zero(),
        converse: converse_holds(kmax)?,
        recursion: rec.into_iter().filter(|(k, _)| *k >= 5).collect(),
        saturated_basis,
        unsaturated_basis,
        saturated_stats,
        unsaturated_stats,
    })
}

/// Result of the stress run on the untransformed ideal.
#[derive(Clone, Debug)]
pub struct FullIdealRun {
    pub generators: usize,
    pub basis: Vec<Poly>,
    pub a3_reduces: bool,
    pub a4_reduces: bool,
    pub stats: GroebnerStats,
}

/// The ideal in `a_2 .. a_9` generated by `D_{2,3} .. D_{2,7}`, `D_{3,4}`,
/// `D_{3,5}`, `D_{3,6}`, `D_{4,5}`, saturated by `a2 a3 a4`.
pub fn full_ideal(limits: &GroebnerLimits) -> Result<FullIdealRun, SubalgError> {
    let mut names = vec!["u".to_string()];
    names.extend((2..=9).rev().map(|k| format!("a{k}")));
    let ring = PolyRing::new(&names);
    let a = vars(&ring, 2..=9);
    let mut gens = Vec::new();
    for j in 3..=7 {
        gens.push(dij(2, j, &a)?);
    }
    for (i, j) in SECONDARY {
        gens.push(dij(i, j, &a)?);
    }
    let generators = gens.len();
    let u = Poly::var(&ring, "u")?;
    gens.push(&(&(&(&u * &a[&2]) * &a[&3]) * &a[&4]) - &Poly::one(&ring));
    let (basis, stats) = buchberger(&gens, limits)?;
    Ok(FullIdealRun {
        generators,
        a3_reduces: (&a[&3] - &a[&2].pow(2)).reduce(&basis)?.is_zero(),
        a4_reduces: (&a[&4] - &a[&2].pow(3)).reduce(&basis)?.is_zero(),
        basis,
        stats,
    })
}

/// Walks a triangular lex basis upwards from the last variable, fixed to
/// `last`. Each variable must be determined by an element linear in it;
/// every other element must vanish at the resulting point. `None` when the
/// basis is not triangular in this sense or the point does not exist.
pub fn solve_triangular(basis: &[Poly], last: Rational) -> Option<ParamAssignment> {
    let ring = basis.first()?.ring().clone();
    let n = ring.nvars();
    let names = ring.names().to_vec();
    let mut at = ParamAssignment::new().with(&names[n - 1], last);
    for v in (0..n - 1).rev() {
        let mut value = None;
        for g in basis {
            let top = (0..n).find(|&i| g.has_var(i));
            if top != Some(v) {
                continue;
            }
            let s = g.substitute(&at);
            if s.degree_in(v) == 1 {
                let coeffs = s.coeffs_in(v);
                let lead = coeffs[&1].constant_value()?;
                let rest = coeffs.get(&0).map_or(Some(rat(0, 1)), |p| p.constant_value())?;
                if lead != rat(0, 1) {
                    value = Some(-rest / lead);
                    break;
                }
            }
        }
        at.set(&names[v], value?);
    }
    basis
        .iter()
        .all(|g| g.evaluate(&at).map(|x| x == rat(0, 1)).unwrap_or(false))
        .then_some(at)
}
