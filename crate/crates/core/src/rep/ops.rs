use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::algebra::UeaElt;
use crate::coeff::{Field, RatFunc};

use super::{linalg, BasisKey, Bounds, CharacterParams, InducedModule, ModElt, RepError, Space};

/// Matrix of an operator between two truncated bases. Column `c` holds the
/// image of `domain[c]` in the coordinates of `codomain`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator<F> {
    pub domain: Vec<BasisKey>,
    pub codomain: Vec<BasisKey>,
    pub matrix: Vec<Vec<F>>,
}

impl<F: Field> TruncatedOperator<F> {
    /// Matrix of `op` on the span of `domain`. An image leaving
    /// `codomain_bounds` is an overflow error, never truncated.
    pub fn build(
        module: &InducedModule<F>,
        op: &UeaElt<F>,
        domain: Vec<BasisKey>,
        codomain_bounds: &Bounds,
    ) -> Result<Self, RepError> {
        let codomain = codomain_bounds.basis(module.space());
        let index: HashMap<&BasisKey, usize> = codomain.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut matrix = vec![vec![F::zero(); domain.len()]; codomain.len()];
        for (col, key) in domain.iter().enumerate() {
            let image = module.act_bounded(op, &module.basis(key.clone()), codomain_bounds)?;
            for (k, c) in image.terms() {
                matrix[index[k]][col] = c.clone();
            }
        }
        Ok(TruncatedOperator {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn entry(&self, row: usize, col: usize) -> &F {
        &self.matrix[row][col]
    }

    /// True when domain and codomain coincide and every entry below the
    /// diagonal vanishes.
    pub fn is_upper_triangular(&self) -> bool {
        self.domain == self.codomain
            && self
                .matrix
                .iter()
                .enumerate()
                .all(|(r, row)| row.iter().take(r).all(F::is_zero))
    }

    pub fn diagonal(&self) -> Vec<F> {
        (0..self.domain.len().min(self.codomain.len()))
            .map(|i| self.matrix[i][i].clone())
            .collect()
    }

    fn element(&self, space: Space, coords: &[F]) -> ModElt<F> {
        let mut x = ModElt::zero(space);
        for (k, c) in self.domain.iter().zip(coords) {
            x.add_term(k.clone(), c.clone());
        }
        x
    }

    fn target_vector(&self, target: &ModElt<F>) -> Result<Vec<F>, RepError> {
        let index: HashMap<&BasisKey, usize> = self.codomain.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut b = vec![F::zero(); self.codomain.len()];
        for (k, c) in target.terms() {
            let i = *index.get(k).ok_or_else(|| RepError::Overflow {
                key: k.label(),
                bounds: Bounds::new(0, 0, 0),
            })?;
            b[i] = c.clone();
        }
        Ok(b)
    }
}

/// Matrix of `a_k` on `span{v, l_1 v, ..., l_1^n v}` in `V_m`.
pub fn eigen_matrix<F: Field>(params: &CharacterParams<F>, k: i64, n: u32) -> Result<TruncatedOperator<F>, RepError> {
    let module = InducedModule::new(Space::V, params.clone());
    let bounds = Bounds::new(0, 0, n);
    TruncatedOperator::build(&module, &module.hat(k), bounds.basis(Space::V), &bounds)
}

/// `bounds` with one more power of `l_1`: the codomain used for the
/// operators `a_k - m_k` on a truncated domain.
fn widened(bounds: &Bounds) -> Bounds {
    Bounds::new(bounds.max_weight, bounds.max_j, bounds.max_k + 1)
}

/// Kernel of `op` on the truncated space `bounds`, computed exactly.
pub fn kernel<F: Field>(module: &InducedModule<F>, op: &UeaElt<F>, bounds: &Bounds) -> Result<Vec<ModElt<F>>, RepError> {
    let t = TruncatedOperator::build(module, op, bounds.basis(module.space()), &widened(bounds))?;
    Ok(linalg::nullspace(&t.matrix, t.domain.len())
        .iter()
        .map(|v| t.element(module.space(), v))
        .collect())
}

/// Solution set `particular + span(kernel)` of a linear system inside a
/// truncated space.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution<F> {
    pub particular: ModElt<F>,
    pub kernel: Vec<ModElt<F>>,
}

/// Solves `op x = target` with `x` inside `bounds`. `None` means no
/// solution exists within the bounds; it says nothing about larger bounds.
pub fn solve_affine<F: Field>(
    module: &InducedModule<F>,
    op: &UeaElt<F>,
    target: &ModElt<F>,
    bounds: &Bounds,
) -> Result<Option<AffineSolution<F>>, RepError> {
    solve_system(module, &[(op.clone(), target.clone())], bounds)
}

/// Solves the simultaneous system `op_i x = target_i`.
pub fn solve_system<F: Field>(
    module: &InducedModule<F>,
    equations: &[(UeaElt<F>, ModElt<F>)],
    bounds: &Bounds,
) -> Result<Option<AffineSolution<F>>, RepError> {
    let domain = bounds.basis(module.space());
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut template = None;
    for (op, target) in equations {
        let t = TruncatedOperator::build(module, op, domain.clone(), &widened(bounds))?;
        rhs.extend(t.target_vector(target)?);
        rows.extend(t.matrix.iter().cloned());
        template = Some(t);
    }
    let Some(t) = template else {
        return Ok(None);
    };
    Ok(linalg::solve(&rows, &rhs, domain.len()).map(|(x, ns)| AffineSolution {
        particular: t.element(module.space(), &x),
        kernel: ns.iter().map(|v| t.element(module.space(), v)).collect(),
    }))
}

/// Limits for [`reaches_generator`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReachBudget {
    /// Images leaving these bounds are discarded.
    pub bounds: Bounds,
    /// Stop once the generated subspace reaches this dimension.
    pub max_dim: usize,
}

/// Incrementally maintained subspace in leading-term echelon form.
struct Span<F> {
    rows: BTreeMap<BasisKey, ModElt<F>>,
}

impl<F: Field> Span<F> {
    fn reduce(&self, mut x: ModElt<F>) -> ModElt<F> {
        loop {
            let Some((key, c)) = x.leading().map(|(k, c)| (k.clone(), c.clone())) else {
                return x;
            };
            match self.rows.get(&key) {
                Some(row) => x = &x - &row.scale(&c),
                None => {
                    // leading term is new; finish reducing the tail later
                    return x;
                }
            }
        }
    }

    /// Inserts `x` if independent; returns the inserted (normalised) row.
    fn insert(&mut self, x: ModElt<F>) -> Option<ModElt<F>> {
        let r = self.reduce(x);
        let (key, c) = r.leading().map(|(k, c)| (k.clone(), c.clone()))?;
        let row = r.scale(&c.checked_inv().expect("nonzero leading coefficient"));
        self.rows.insert(key, row.clone());
        Some(row)
    }

    fn contains(&self, x: &ModElt<F>) -> bool {
        self.reduce(x.clone()).is_zero()
    }
}

/// Searches the submodule generated by `x` for the generator `v`, using the
/// operators `a_2 - m_2`, `a_3 - m_3` and generators of the acting algebra.
///
/// `true` is a proof that `v` lies in the submodule generated by `x`;
/// `false` only means it was not found within the budget.
pub fn reaches_generator<F: Field>(
    module: &InducedModule<F>,
    x: &ModElt<F>,
    budget: &ReachBudget,
) -> Result<bool, RepError> {
    if x.is_zero() {
        return Ok(false);
    }
    let mut ops = vec![
        module.hat_shifted(2),
        module.hat_shifted(3),
        UeaElt::generator(1),
        UeaElt::generator(2),
    ];
    if module.space() != Space::V {
        ops.push(UeaElt::generator(0));
    }
    if module.space() == Space::Ind {
        ops.push(UeaElt::generator(-1));
        ops.push(UeaElt::generator(-2));
    }
    let v = module.generator();
    let mut span = Span { rows: BTreeMap::new() };
    let mut queue = VecDeque::new();
    if let Some(row) = span.insert(x.clone()) {
        queue.push_back(row);
    }
    if span.contains(&v) {
        return Ok(true);
    }
    while let Some(e) = queue.pop_front() {
        for op in &ops {
            let y = module.act(op, &e)?;
            if y.is_zero() || y.check_bounds(&budget.bounds).is_err() {
                continue;
            }
            if let Some(row) = span.insert(y) {
                if span.contains(&v) {
                    return Ok(true);
                }
                if span.rows.len() >= budget.max_dim {
                    return Ok(false);
                }
                queue.push_back(row);
            }
        }
    }
    Ok(false)
}

/// Outcome of restricting the one-dimensional module of the positive part
/// (`l_1 -> -m3/z^2`, `l_2 -> m2 - m3/z`, `l_k -> 0` for `k >= 3`) to `a_z`
/// under `m4 = z m3`.
#[derive(Clone, Debug)]
pub struct RestrictionCheck {
    pub kmax: i64,
    /// `(k, lambda(a_k) - m_k)` for every mismatch.
    pub mismatches: Vec<(i64, RatFunc)>,
    /// `(i, j)` pairs where `lambda([l_i, l_j]) != 0`.
    pub not_a_character: Vec<(i64, i64)>,
}

impl RestrictionCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.not_a_character.is_empty()
    }
}

pub fn check_reducible_restriction(kmax: i64) -> RestrictionCheck {
    let z = RatFunc::param("z");
    let m2 = RatFunc::param("m2");
    let m3 = RatFunc::param("m3");
    let params = CharacterParams::new(z.clone(), m2.clone(), m3.clone(), &z * &m3, RatFunc::param("theta"))
        .expect("z is nonzero");
    let lambda = |k: i64| -> RatFunc {
        match k {
            1 => -m3.checked_div(&z.pow_u(2)).unwrap(),
            2 => &m2 - &m3.checked_div(&z).unwrap(),
            _ => RatFunc::zero(),
        }
    };
    let mut mismatches = Vec::new();
    for k in 2..=kmax {
        let restricted = &lambda(k) - &(&z.pow_u((k - 1) as u32) * &lambda(1));
        let diff = &restricted - &params.value(k);
        if !diff.is_zero() {
            mismatches.push((k, diff));
        }
    }
    let mut not_a_character = Vec::new();
    for i in 1..=kmax {
        for j in (i + 1)..=kmax {
            // lambda([l_i, l_j]) = (j - i) lambda(l_{i+j})
            if !(RatFunc::from_i64(j - i) * &lambda(i + j)).is_zero() {
                not_a_character.push((i, j));
            }
        }
    }
    RestrictionCheck {
        kmax,
        mismatches,
        not_a_character,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, Rational};

    fn sym(n: &str) -> RatFunc {
        RatFunc::param(n)
    }

    fn numeric(z: i64, m2: i64, m3: i64, m4: i64) -> CharacterParams<Rational> {
        CharacterParams::new(rat(z, 1), rat(m2, 1), rat(m3, 1), rat(m4, 1), rat(0, 1)).unwrap()
    }

    #[test]
    fn eigen_matrix_small_cases() {
        let p = CharacterParams::symbolic();
        let t = eigen_matrix(&p, 2, 1).unwrap();
        assert_eq!(t.matrix[0][0], sym("m2"));
        assert_eq!(t.matrix[0][1], -sym("m3"));
        assert!(t.matrix[1][0].is_zero());
        assert_eq!(t.matrix[1][1], &sym("m2") - &sym("z").pow_u(2));
        let t0 = eigen_matrix(&p, 2, 0).unwrap();
        assert_eq!(t0.matrix, vec![vec![sym("m2")]]);
    }

    #[test]
    fn kernel_on_v_is_one_dimensional() {
        let m = InducedModule::new(Space::W, numeric(2, 1, 5, 3));
        let op = m.hat_shifted(2);
        let ker = kernel(&m, &op, &Bounds::new(0, 0, 6)).unwrap();
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0].len(), 1);
        assert_eq!(ker[0].leading().unwrap().0, &BasisKey::generator());
    }

    #[test]
    fn too_small_codomain_overflows() {
        let m = InducedModule::new(Space::W, numeric(1, 1, 1, 3));
        let op = m.hat_shifted(2);
        let domain = Bounds::new(0, 2, 2).basis(Space::W);
        let r = TruncatedOperator::build(&m, &op, domain, &Bounds::new(0, 2, 2));
        assert!(matches!(r, Err(RepError::Overflow { .. })));
    }

    #[test]
    fn restriction_passes_symbolically() {
        let r = check_reducible_restriction(12);
        assert!(r.passed(), "{:?}", r.mismatches);
    }

    #[test]
    fn generator_reachability_in_v() {
        let p = numeric(1, 2, 3, 5);
        let m = InducedModule::new(Space::V, p);
        let x = m.basis(BasisKey::w(0, 1));
        let budget = ReachBudget {
            bounds: Bounds::new(0, 0, 8),
            max_dim: 64,
        };
        assert!(reaches_generator(&m, &x, &budget).unwrap());
        assert!(reaches_generator(&m, &m.generator(), &budget).unwrap());
    }

    #[test]
    fn invariant_element_does_not_reach_generator() {
        // m4 = z m3: (l_1 + m3/z^2) v spans the kernel of V_m -> C
        let p = numeric(2, 1, 3, 6);
        let m = InducedModule::new(Space::V, p);
        let shift = rat(3, 4);
        let x = &m.basis(BasisKey::w(0, 1)) + &m.generator().scale(&shift);
        let budget = ReachBudget {
            bounds: Bounds::new(0, 0, 8),
            max_dim: 64,
        };
        assert!(!reaches_generator(&m, &x, &budget).unwrap());
    }
}
