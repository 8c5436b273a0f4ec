//! Buchberger's algorithm and multivariate division.

use std::collections::{BTreeMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, OrderKind, Polynomial, TermOrder, VarContext};

/// Sort key whose lexicographic order agrees with `order` on monomials.
fn order_key(order: &TermOrder, m: &Monomial) -> Vec<i64> {
    let e = m.exponents();
    match order.kind() {
        OrderKind::Lex => order.priority().iter().map(|&v| e[v] as i64).collect(),
        OrderKind::Grevlex => {
            std::iter::once(m.degree() as i64).chain(order.priority().iter().rev().map(|&v| -(e[v] as i64))).collect()
        }
    }
}

/// Terms sorted largest first; the leading coefficient is 1.
#[derive(Clone, Debug)]
struct MonicPoly {
    terms: Vec<(Monomial, BigRational)>,
}

impl MonicPoly {
    fn new(p: &Polynomial, order: &TermOrder) -> Option<Self> {
        let sorted = p.sorted_terms(order);
        let lc = sorted.first()?.1.clone();
        let inv = lc.recip();
        Some(MonicPoly { terms: sorted.into_iter().map(|(m, c)| (m.clone(), c * &inv)).collect() })
    }

    fn lead(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn to_poly(&self, ctx: &VarContext) -> Polynomial {
        Polynomial::from_terms(ctx, self.terms.iter().cloned())
    }
}

/// A Gröbner basis prepared for repeated division.
#[derive(Clone, Debug)]
pub(crate) struct Reducer {
    order: TermOrder,
    basis: Vec<MonicPoly>,
}

impl Reducer {
    pub(crate) fn new(basis: &[Polynomial], order: &TermOrder) -> Self {
        Reducer { order: order.clone(), basis: basis.iter().filter_map(|g| MonicPoly::new(g, order)).collect() }
    }

    pub(crate) fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.basis.iter().map(MonicPoly::lead)
    }

    /// Whether `m` is a standard monomial (divisible by no leading term).
    pub(crate) fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading_monomials().any(|l| l.divides(m))
    }

    pub(crate) fn reduce(&self, f: &Polynomial) -> Polynomial {
        reduce_with(&self.basis, f, &self.order)
    }
}

fn reduce_with(basis: &[MonicPoly], f: &Polynomial, order: &TermOrder) -> Polynomial {
    let ctx = f.context().clone();
    let mut work: BTreeMap<Vec<i64>, (Monomial, BigRational)> =
        f.terms().map(|(m, c)| (order_key(order, m), (m.clone(), c.clone()))).collect();
    let mut rem = Polynomial::zero(&ctx);
    while let Some((_, (m, c))) = work.pop_last() {
        let divisor = basis.iter().find_map(|g| g.lead().quotient_of(&m).map(|q| (g, q)));
        match divisor {
            None => rem.add_term(m, c),
            Some((g, q)) => {
                for (gm, gc) in &g.terms[1..] {
                    let t = gm.mul(&q);
                    let delta = -(&c * gc);
                    let key = order_key(order, &t);
                    match work.get_mut(&key) {
                        Some(entry) => {
                            entry.1 += delta;
                            if entry.1.is_zero() {
                                work.remove(&key);
                            }
                        }
                        None => {
                            work.insert(key, (t, delta));
                        }
                    }
                }
            }
        }
    }
    rem
}

/// Remainder of `f` on division by `basis`. When `basis` is a Gröbner basis
/// for `order` this is the canonical normal form modulo the ideal.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &TermOrder) -> Polynomial {
    Reducer::new(basis, order).reduce(f)
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &TermOrder) -> Polynomial {
    let (Some(mf), Some(mg)) = (MonicPoly::new(f, order), MonicPoly::new(g, order)) else {
        return Polynomial::zero(f.context());
    };
    spoly(&mf, &mg, f.context())
}

fn spoly(f: &MonicPoly, g: &MonicPoly, ctx: &VarContext) -> Polynomial {
    let l = f.lead().lcm(g.lead());
    let one = BigRational::one();
    let a = f.to_poly(ctx).mul_monomial(&f.lead().quotient_of(&l).unwrap(), &one);
    let b = g.to_poly(ctx).mul_monomial(&g.lead().quotient_of(&l).unwrap(), &one);
    &a - &b
}

/// Reduced Gröbner basis of the ideal generated by `relations`: every element
/// monic, no term of an element divisible by another element's leading term.
/// Sorted by leading monomial, largest first.
pub fn groebner_basis(relations: &[Polynomial], order: &TermOrder) -> Result<Vec<Polynomial>> {
    let Some(first) = relations.first() else {
        return Ok(Vec::new());
    };
    let ctx = first.context().clone();
    if relations.iter().any(|r| *r.context() != ctx) {
        return Err(Error::ContextMismatch);
    }

    let mut basis: Vec<MonicPoly> = Vec::new();
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    let push = |basis: &mut Vec<MonicPoly>, pairs: &mut HashSet<(usize, usize)>, g: MonicPoly| {
        let j = basis.len();
        basis.push(g);
        for i in 0..j {
            pairs.insert((i, j));
        }
    };
    for r in relations {
        let r = reduce_with(&basis, r, order);
        if let Some(g) = MonicPoly::new(&r, order) {
            push(&mut basis, &mut pairs, g);
        }
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first, ties broken by index for determinism
        let &(i, j) = pairs
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let l1 = basis[a].lead().lcm(basis[b].lead());
                let l2 = basis[c].lead().lcm(basis[d].lead());
                order.cmp(&l1, &l2).then((a, b).cmp(&(c, d)))
            })
            .unwrap();
        pairs.remove(&(i, j));

        let (li, lj) = (basis[i].lead(), basis[j].lead());
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = spoly(&basis[i], &basis[j], &ctx);
        let r = reduce_with(&basis, &s, order);
        if let Some(g) = MonicPoly::new(&r, order) {
            push(&mut basis, &mut pairs, g);
        }
    }

    // minimal basis: drop elements whose leading term another element divides
    let mut keep: Vec<MonicPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(k, h)| k != i && h.lead().divides(g.lead()) && (h.lead() != g.lead() || k < i));
        if !redundant {
            keep.push(g.clone());
        }
    }

    // interreduce tails
    let mut reduced = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<MonicPoly> = keep.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, g)| g.clone()).collect();
        let g = reduce_with(&others, &keep[i].to_poly(&ctx), order);
        reduced.push(g.monic(order));
    }
    reduced.sort_by(|a, b| {
        let la = a.leading_term(order).unwrap().0;
        let lb = b.leading_term(order).unwrap().0;
        order.cmp(lb, la)
    });
    Ok(reduced)
}
