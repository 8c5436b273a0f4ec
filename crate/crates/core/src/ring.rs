//! Finitely presented rings `B = Q[X1..Xn]/(f1..fm)` and their elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, Reducer};
use crate::parse::parse_expression;
use crate::poly::{Monomial, OrderKind, Polynomial, TermOrder, VarContext};

struct RingInner {
    vars: VarContext,
    relations: Vec<Polynomial>,
    order: TermOrder,
    groebner: Vec<Polynomial>,
    reducer: Reducer,
}

/// A ring presentation with its reduced Gröbner basis computed once, at
/// construction. Cloning is cheap.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl Ring {
    /// Validate a presentation. Relations are matched to `variables` by name;
    /// zero relations are dropped. Rejects presentations of the zero ring.
    pub fn new<S: AsRef<str>>(variables: &[S], relations: &[Polynomial], order: TermOrder) -> Result<Ring> {
        let vars = VarContext::new(variables)?;
        if order.nvars() != vars.len() {
            return Err(Error::InvalidPriority(order.priority().to_vec()));
        }
        let mut rels = Vec::with_capacity(relations.len());
        for r in relations {
            let r = r.embed(&vars)?;
            if r.is_zero() {
                continue;
            }
            if r.constant_value().is_some() {
                return Err(Error::ZeroRing);
            }
            rels.push(r);
        }
        let groebner = groebner_basis(&rels, &order)?;
        if groebner.iter().any(|g| g.constant_value().is_some()) {
            return Err(Error::ZeroRing);
        }
        let reducer = Reducer::new(&groebner, &order);
        Ok(Ring(Arc::new(RingInner { vars, relations: rels, order, groebner, reducer })))
    }

    /// Presentation from relation strings, variables ranked in declaration order.
    pub fn parse<S: AsRef<str>>(variables: &[S], relations: &[&str], kind: OrderKind) -> Result<Ring> {
        let vars = VarContext::new(variables)?;
        let rels = relations.iter().map(|r| parse_expression(r, &vars)).collect::<Result<Vec<_>, _>>()?;
        Ring::new(variables, &rels, TermOrder::new(kind, vars.len()))
    }

    /// The polynomial ring on `variables` (no relations), grevlex.
    pub fn free<S: AsRef<str>>(variables: &[S]) -> Result<Ring> {
        Ring::new(variables, &[], TermOrder::grevlex(variables.len()))
    }

    pub fn context(&self) -> &VarContext {
        &self.0.vars
    }

    pub fn variables(&self) -> &[String] {
        self.0.vars.names()
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.0.relations
    }

    pub fn order(&self) -> &TermOrder {
        &self.0.order
    }

    pub fn groebner(&self) -> &[Polynomial] {
        &self.0.groebner
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.0.reducer.reduce(p)
    }

    pub(crate) fn is_standard(&self, m: &Monomial) -> bool {
        self.0.reducer.is_standard(m)
    }

    /// The class of `p` in this ring. `p` may use any subset of the variables.
    pub fn element(&self, p: &Polynomial) -> Result<RingElement> {
        let p = p.embed(&self.0.vars)?;
        Ok(RingElement { repr: self.normal_form(&p), ring: self.clone() })
    }

    pub fn parse_element(&self, text: &str) -> Result<RingElement> {
        let p = parse_expression(text, &self.0.vars)?;
        self.element(&p)
    }

    /// Wrap a polynomial already known to be in normal form.
    pub(crate) fn element_unchecked(&self, repr: Polynomial) -> RingElement {
        RingElement { ring: self.clone(), repr }
    }

    pub fn gen(&self, i: usize) -> RingElement {
        self.element_unchecked(self.normal_form(&Polynomial::var(&self.0.vars, i)))
    }

    pub fn var(&self, name: &str) -> Result<RingElement> {
        let i = self.0.vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.gen(i))
    }

    pub fn gens(&self) -> Vec<RingElement> {
        (0..self.nvars()).map(|i| self.gen(i)).collect()
    }

    pub fn zero(&self) -> RingElement {
        self.element_unchecked(Polynomial::zero(&self.0.vars))
    }

    pub fn one(&self) -> RingElement {
        self.element_unchecked(Polynomial::one(&self.0.vars))
    }

    pub fn constant(&self, c: BigRational) -> RingElement {
        self.element_unchecked(Polynomial::constant(&self.0.vars, c))
    }

    /// `B[name]`: same relations, one more variable, ranked last in the order.
    pub fn extend(&self, name: &str) -> Result<Ring> {
        let mut names = self.variables().to_vec();
        if names.iter().any(|n| n == name) {
            return Err(Error::DuplicateVariable(name.to_string()));
        }
        names.push(name.to_string());
        Ring::new(&names, &self.0.relations, self.0.order.extended())
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.vars == other.0.vars && self.0.order == other.0.order && self.0.groebner == other.0.groebner)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.variables().join(","))?;
        if !self.0.relations.is_empty() {
            let rels: Vec<String> =
                self.0.relations.iter().map(|r| r.display_with(&self.0.order).to_string()).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

/// An element of a [`Ring`], always held as its normal form.
#[derive(Clone)]
pub struct RingElement {
    ring: Ring,
    repr: Polynomial,
}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn repr(&self) -> &Polynomial {
        &self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.repr.is_one()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        self.repr.constant_value()
    }

    /// Total degree of the normal form; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.repr.total_degree()
    }

    /// Scaled to leading coefficient 1 under the ring's order.
    pub fn monic(&self) -> RingElement {
        self.ring.element_unchecked(self.repr.monic(self.ring.order()))
    }

    pub fn scale(&self, c: &BigRational) -> RingElement {
        self.ring.element_unchecked(self.repr.scale(c))
    }

    fn check(&self, other: &RingElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.ring.element_unchecked(self.repr.checked_add(&other.repr)?))
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.ring.element_unchecked(self.repr.checked_sub(&other.repr)?))
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        let p = self.repr.checked_mul(&other.repr)?;
        Ok(self.ring.element_unchecked(self.ring.normal_form(&p)))
    }

    pub fn pow(&self, mut e: u32) -> RingElement {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.repr == other.repr
    }
}

impl Eq for RingElement {}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.repr.display_with(self.ring.order()).fmt(f)
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}

macro_rules! element_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$checked(rhs).expect("elements of different rings")
            }
        }
        impl $tr<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$method(&rhs)
            }
        }
    };
}

element_binop!(Add, add, checked_add);
element_binop!(Sub, sub, checked_sub);
element_binop!(Mul, mul, checked_mul);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.ring.element_unchecked(-&self.repr)
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

/// `numerator / t^exponent` in the localization `B_t`.
///
/// Fractions are never cancelled; equality is by cross-multiplication,
/// which is equality in `B_t` provided `t` is not a zero divisor of `B`.
#[derive(Clone, Debug)]
pub struct LocalizedElement {
    t: RingElement,
    numerator: RingElement,
    exponent: u32,
}

impl LocalizedElement {
    pub fn new(numerator: RingElement, t: RingElement, exponent: u32) -> Result<Self> {
        numerator.check(&t)?;
        if t.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(LocalizedElement { t, numerator, exponent })
    }

    /// The image of `b` under `B -> B_t`.
    pub fn from_element(b: RingElement, t: RingElement) -> Result<Self> {
        Self::new(b, t, 0)
    }

    pub fn ring(&self) -> &Ring {
        self.t.ring()
    }

    pub fn inverted(&self) -> &RingElement {
        &self.t
    }

    pub fn numerator(&self) -> &RingElement {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn denominator(&self) -> RingElement {
        self.t.pow(self.exponent)
    }

    fn check(&self, other: &LocalizedElement) -> Result<()> {
        self.t.check(&other.t)?;
        if self.t != other.t {
            return Err(Error::DenominatorMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LocalizedElement) -> Result<LocalizedElement> {
        self.check(other)?;
        let k = self.exponent.max(other.exponent);
        let a = &self.numerator * &self.t.pow(k - self.exponent);
        let b = &other.numerator * &self.t.pow(k - other.exponent);
        Ok(LocalizedElement { t: self.t.clone(), numerator: &a + &b, exponent: k })
    }

    pub fn checked_mul(&self, other: &LocalizedElement) -> Result<LocalizedElement> {
        self.check(other)?;
        Ok(LocalizedElement {
            t: self.t.clone(),
            numerator: &self.numerator * &other.numerator,
            exponent: self.exponent + other.exponent,
        })
    }

    pub fn neg(&self) -> LocalizedElement {
        LocalizedElement { numerator: -&self.numerator, ..self.clone() }
    }

    /// Cross-multiplied equality: `n1 * t^k2 == n2 * t^k1`.
    pub fn equals(&self, other: &LocalizedElement) -> Result<bool> {
        self.check(other)?;
        let lhs = &self.numerator * &self.t.pow(other.exponent);
        let rhs = &other.numerator * &self.t.pow(self.exponent);
        Ok(lhs == rhs)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The element as a member of `B`, when the denominator is a unit
    /// (exponent zero or `t` a nonzero constant).
    pub fn to_element(&self) -> Option<RingElement> {
        if self.exponent == 0 {
            return Some(self.numerator.clone());
        }
        let c = self.t.constant_value()?;
        let mut d = BigRational::one();
        for _ in 0..self.exponent {
            d *= &c;
        }
        debug_assert!(!d.is_zero());
        Some(self.numerator.scale(&d.recip()))
    }
}

impl PartialEq for LocalizedElement {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({}) / ({})", self.numerator, self.t),
            k => write!(f, "({}) / ({})^{k}", self.numerator, self.t),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cylinder() -> Ring {
        Ring::parse(&["X", "Y", "Z", "T"], &["X*Y - Z^2 - 1"], OrderKind::Grevlex).unwrap()
    }

    #[test]
    fn presentation_of_r_t() {
        let b = cylinder();
        assert_eq!(b.groebner().len(), 1);
        assert_eq!(b.groebner()[0].to_string(), "X*Y - Z^2 - 1");
        let xy = b.parse_element("X*Y").unwrap();
        assert_eq!(xy, b.parse_element("Z^2 + 1").unwrap());
    }

    #[test]
    fn free_ring_and_zero_ring() {
        let k = Ring::parse(&["X"], &[], OrderKind::Grevlex).unwrap();
        assert!(k.groebner().is_empty());
        assert!(matches!(Ring::parse(&["X"], &["1"], OrderKind::Grevlex), Err(Error::ZeroRing)));
        assert!(matches!(Ring::parse(&["X"], &["X", "X - 1"], OrderKind::Grevlex), Err(Error::ZeroRing)));
    }

    #[test]
    fn presentation_errors() {
        assert!(matches!(Ring::parse(&["X", "X"], &[], OrderKind::Grevlex), Err(Error::DuplicateVariable(_))));
        let w = VarContext::new(&["W"]).unwrap();
        let rel = Polynomial::var(&w, 0);
        assert!(matches!(Ring::new(&["X"], &[rel], TermOrder::grevlex(1)), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn extension_keeps_relations() {
        let b = Ring::parse(&["X", "Y", "Z", "T"], &["X*Y - Z*T - 1"], OrderKind::Grevlex).unwrap();
        let bu = b.extend("U").unwrap();
        assert_eq!(bu.variables(), ["X", "Y", "Z", "T", "U"]);
        assert_eq!(bu.parse_element("X*Y*U").unwrap(), bu.parse_element("Z*T*U + U").unwrap());
        assert!(b.extend("X").is_err());
    }

    #[test]
    fn localized_identities() {
        let b = cylinder();
        let x = b.var("X").unwrap();
        let z = b.var("Z").unwrap();
        let z_over_x = LocalizedElement::new(z.clone(), x.clone(), 1).unwrap();
        let zero = LocalizedElement::from_element(b.zero(), x.clone()).unwrap();
        assert!(z_over_x.checked_add(&zero).unwrap().equals(&z_over_x).unwrap());

        let xz_over_x = LocalizedElement::new(&x * &z, x.clone(), 1).unwrap();
        let z_plain = LocalizedElement::from_element(z.clone(), x.clone()).unwrap();
        assert!(xz_over_x.equals(&z_plain).unwrap());

        let sq = z_over_x.checked_mul(&z_over_x).unwrap();
        let want = LocalizedElement::new(z.pow(2), x.clone(), 2).unwrap();
        assert!(sq.equals(&want).unwrap());
        assert_eq!(sq.exponent(), 2);
    }

    #[test]
    fn localized_mismatch() {
        let b = cylinder();
        let a = LocalizedElement::from_element(b.one(), b.var("X").unwrap()).unwrap();
        let c = LocalizedElement::from_element(b.one(), b.var("Y").unwrap()).unwrap();
        assert!(matches!(a.checked_add(&c), Err(Error::DenominatorMismatch)));
        assert!(matches!(LocalizedElement::new(b.one(), b.zero(), 1), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn demotion_when_denominator_is_a_unit() {
        let b = cylinder();
        let two = b.constant(BigRational::from_integer(2.into()));
        let e = LocalizedElement::new(b.var("X").unwrap(), two, 1).unwrap();
        assert_eq!(e.to_element().unwrap(), b.parse_element("1/2*X").unwrap());
        let e = LocalizedElement::new(b.one(), b.var("X").unwrap(), 1).unwrap();
        assert!(e.to_element().is_none());
    }
}
