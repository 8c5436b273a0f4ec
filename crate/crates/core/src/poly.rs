//! Sparse multivariate polynomials over `Q`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An ordered list of variable names shared by every polynomial built in it.
#[derive(Clone, Debug)]
pub struct VarContext(Arc<[String]>);

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(VarContext(names.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// Context with one extra variable appended.
    pub fn extend(&self, name: &str) -> Result<Self> {
        if self.index_of(name).is_some() {
            return Err(Error::DuplicateVariable(name.to_string()));
        }
        let mut names = self.0.to_vec();
        names.push(name.to_string());
        Ok(VarContext(names.into()))
    }
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarContext {}

/// A power product, stored as a dense exponent vector indexed by variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All monomials in `nvars` variables of total degree at most `bound`.
    pub fn all_up_to_degree(nvars: usize, bound: u32) -> Vec<Monomial> {
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == cur.len() {
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        rec(0, bound, &mut vec![0; nvars], &mut out);
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum OrderKind {
    Lex,
    Grevlex,
}

impl std::str::FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "grevlex" => Ok(OrderKind::Grevlex),
            other => Err(Error::UnknownOrder(other.to_string())),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Lex => "lex",
            OrderKind::Grevlex => "grevlex",
        })
    }
}

/// A monomial order. `priority[0]` is the largest variable.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl TermOrder {
    /// Order of the given kind with variables ranked in declaration order.
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        TermOrder { kind, priority: (0..nvars).collect() }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::Grevlex, nvars)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars)
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            if p >= priority.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPriority(priority));
            }
        }
        Ok(TermOrder { kind, priority })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    /// The same order with a new variable appended as the smallest one.
    pub fn extended(&self) -> Self {
        let mut priority = self.priority.clone();
        priority.push(priority.len());
        TermOrder { kind: self.kind, priority }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.priority {
                    match a.0[v].cmp(&b.0[v]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &v in self.priority.iter().rev() {
                    match a.0[v].cmp(&b.0[v]) {
                        Ordering::Equal => {}
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A polynomial with exact rational coefficients. No stored coefficient is
/// zero, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ctx: VarContext,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(ctx: &VarContext) -> Self {
        Polynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &VarContext) -> Self {
        Self::constant(ctx, BigRational::one())
    }

    pub fn constant(ctx: &VarContext, c: BigRational) -> Self {
        Self::term(ctx, Monomial::one(ctx.len()), c)
    }

    pub fn from_int(ctx: &VarContext, c: i64) -> Self {
        Self::constant(ctx, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(ctx: &VarContext, i: usize) -> Self {
        Self::term(ctx, Monomial::var(ctx.len(), i), BigRational::one())
    }

    pub fn term(ctx: &VarContext, m: Monomial, c: BigRational) -> Self {
        assert_eq!(m.nvars(), ctx.len(), "monomial arity does not match context");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn from_terms<I>(ctx: &VarContext, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Polynomial::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn context(&self) -> &VarContext {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, BigRational)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` iff the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted by `order`, largest first.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// Scaled so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: &TermOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect() }
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut out = Polynomial::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ctx);
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

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut d = m.clone();
                d.0[i] -= 1;
                out.add_term(d, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Rewrite into `ctx`, matching variables by name.
    pub fn embed(&self, ctx: &VarContext) -> Result<Polynomial> {
        if self.ctx == *ctx {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.ctx.len());
        for (i, name) in self.ctx.names().iter().enumerate() {
            match ctx.index_of(name) {
                Some(j) => map.push(j),
                None => {
                    // a variable that never occurs can be dropped
                    if self.terms.keys().any(|m| m.0[i] != 0) {
                        return Err(Error::UnknownVariable(name.clone()));
                    }
                    map.push(usize::MAX);
                }
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; ctx.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x != 0 {
                    e[map[i]] = x;
                }
            }
            (Monomial(e), c.clone())
        });
        Ok(Polynomial { ctx: ctx.clone(), terms: terms.collect() })
    }

    /// Formatter printing terms in descending `order`.
    pub fn display_with<'a>(&'a self, order: &'a TermOrder) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, order: Some(order) }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    order: Option<&'a TermOrder>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        if p.is_zero() {
            return f.write_str("0");
        }
        let default;
        let order = match self.order {
            Some(o) => o,
            None => {
                default = TermOrder::grevlex(p.ctx.len());
                &default
            }
        };
        for (k, (m, c)) in p.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
                continue;
            }
            let mut first = true;
            if !abs.is_one() {
                write!(f, "{abs}")?;
                first = false;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(p.ctx.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay { poly: self, order: None }.fmt(f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials from different variable contexts")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
