use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::coeff::{Monomial, Poly};

use super::SubalgError;

/// Guards against runaway Buchberger runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroebnerLimits {
    pub max_pairs: usize,
    pub max_basis: usize,
    pub max_terms: usize,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits {
            max_pairs: 20_000,
            max_basis: 400,
            max_terms: 20_000,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroebnerStats {
    pub pairs_reduced: usize,
    pub pairs_skipped: usize,
    pub zero_reductions: usize,
    pub basis_before_reduction: usize,
}

/// `lcm/lt(f) * f - lcm/lt(g) * g` with both leading coefficients scaled to 1.
pub fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm), &fc.recip());
    let b = g.mul_term(&l.div(gm), &gc.recip());
    &a - &b
}

/// True when every S-polynomial of `basis` reduces to zero.
pub fn is_groebner(basis: &[Poly]) -> Result<bool, SubalgError> {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            if !s_polynomial(&basis[i], &basis[j]).reduce(basis)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reduced Groebner basis of the ideal generated by `gens` under the lex
/// order of their ring (variable 0 largest).
///
/// Pairs are selected by the normal strategy; the product and chain
/// criteria discard pairs known to reduce to zero.
pub fn buchberger(gens: &[Poly], limits: &GroebnerLimits) -> Result<(Vec<Poly>, GroebnerStats), SubalgError> {
    let mut stats = GroebnerStats::default();
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let r = g.reduce(&basis)?;
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    if basis.is_empty() {
        return Ok((basis, stats));
    }
    let lm = |p: &Poly| p.leading_monomial().expect("basis elements are nonzero").clone();
    let mut queue: BTreeSet<(u32, Monomial, usize, usize)> = BTreeSet::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    let push_pairs = |queue: &mut BTreeSet<_>, basis: &[Poly], new: usize| {
        for i in 0..new {
            let l = lm(&basis[i]).lcm(&lm(&basis[new]));
            queue.insert((l.total_degree(), l, i, new));
        }
    };
    for n in 1..basis.len() {
        push_pairs(&mut queue, &basis, n);
    }
    while let Some((_, lcm, i, j)) = queue.pop_first() {
        done.insert((i, j));
        let (mi, mj) = (lm(&basis[i]), lm(&basis[j]));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if mi.coprime(&mj) || chain {
            stats.pairs_skipped += 1;
            continue;
        }
        stats.pairs_reduced += 1;
        if stats.pairs_reduced > limits.max_pairs {
            return Err(SubalgError::ResourceCap {
                what: "pairs",
                limit: limits.max_pairs,
            });
        }
        let r = s_polynomial(&basis[i], &basis[j]).reduce(&basis)?;
        if r.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        if r.nterms() > limits.max_terms {
            return Err(SubalgError::ResourceCap {
                what: "terms",
                limit: limits.max_terms,
            });
        }
        basis.push(r.monic());
        if basis.len() > limits.max_basis {
            return Err(SubalgError::ResourceCap {
                what: "basis size",
                limit: limits.max_basis,
            });
        }
        push_pairs(&mut queue, &basis, basis.len() - 1);
    }
    stats.basis_before_reduction = basis.len();
    Ok((reduce_basis(basis)?, stats))
}

/// Minimalises and inter-reduces a Groebner basis; the result is sorted by
/// increasing leading monomial.
pub fn reduce_basis(basis: Vec<Poly>) -> Result<Vec<Poly>, SubalgError> {
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let m = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hm = h.leading_monomial().unwrap();
            k != i && hm.divides(m) && (hm != m || k < i)
        });
        if !redundant {
            minimal.push(g.monic());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let (lm, _) = minimal[i].leading().unwrap();
        let head = Poly::monomial(minimal[i].ring(), lm.clone(), crate::coeff::rat(1, 1));
        let tail = (&minimal[i] - &head).reduce(&others)?;
        reduced.push(&head + &tail);
    }
    reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    Ok(reduced)
}
