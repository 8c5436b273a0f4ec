//! Derivations of a finitely presented ring, given by the images of the
//! generators.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{LocalizedElement, Ring, RingElement};

/// Iteration cap used when no other bound is given.
pub const DEFAULT_NILPOTENCY_BOUND: u32 = 64;

/// A `Q`-derivation `D` of a ring `B`, determined by `D(X_i)`.
///
/// Construction checks well-definedness: every relation `f` must satisfy
/// `sum_i (df/dX_i) * D(X_i) = 0` in `B`.
#[derive(Clone)]
pub struct Derivation {
    ring: Ring,
    images: Vec<RingElement>,
    label: String,
}

impl Derivation {
    pub fn new(ring: &Ring, label: impl Into<String>, images: Vec<RingElement>) -> Result<Self> {
        if images.len() != ring.nvars() {
            let missing = ring.variables().get(images.len()).cloned().unwrap_or_default();
            return Err(Error::MissingImage(missing));
        }
        if images.iter().any(|im| im.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        let d = Derivation { ring: ring.clone(), images, label: label.into() };
        for rel in ring.relations() {
            let residue = ring.normal_form(&d.leibniz(rel));
            if !residue.is_zero() {
                return Err(Error::NotWellDefined { relation: rel.clone(), residue });
            }
        }
        Ok(d)
    }

    /// Build from `(variable, expression)` pairs; every variable needs an image.
    pub fn from_strs(ring: &Ring, label: impl Into<String>, images: &[(&str, &str)]) -> Result<Self> {
        let mut slots: Vec<Option<RingElement>> = vec![None; ring.nvars()];
        for (name, expr) in images {
            let i = ring.context().index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            slots[i] = Some(ring.parse_element(expr)?);
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::MissingImage(ring.variables()[i].clone())))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(ring, label, images)
    }

    pub fn zero(ring: &Ring, label: impl Into<String>) -> Self {
        Derivation { ring: ring.clone(), images: vec![ring.zero(); ring.nvars()], label: label.into() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn images(&self) -> &[RingElement] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &RingElement {
        &self.images[i]
    }

    /// Largest total degree among the generator images (0 for the zero map).
    pub fn max_image_degree(&self) -> u32 {
        self.images.iter().filter_map(RingElement::degree).max().unwrap_or(0)
    }

    /// `sum_i (dp/dX_i) * D(X_i)` as a polynomial, before reduction.
    fn leibniz(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(p.context());
        for (i, im) in self.images.iter().enumerate() {
            if im.is_zero() {
                continue;
            }
            let d = p.partial(i);
            if !d.is_zero() {
                out = &out + &(&d * im.repr());
            }
        }
        out
    }

    /// `D(f)`, in normal form.
    pub fn apply(&self, f: &RingElement) -> RingElement {
        assert!(f.ring() == &self.ring, "element is not in the derivation's ring");
        self.ring.element_unchecked(self.ring.normal_form(&self.leibniz(f.repr())))
    }

    /// `D` applied to an arbitrary representative `p` of a class in `B`.
    /// Agrees with [`Derivation::apply`] on the class because `D` is well defined.
    pub fn apply_representative(&self, p: &Polynomial) -> Result<RingElement> {
        let p = p.embed(self.ring.context())?;
        Ok(self.ring.element_unchecked(self.ring.normal_form(&self.leibniz(&p))))
    }

    /// `D^times(f)`.
    pub fn apply_n(&self, f: &RingElement, times: u32) -> RingElement {
        let mut g = f.clone();
        for _ in 0..times {
            if g.is_zero() {
                break;
            }
            g = self.apply(&g);
        }
        g
    }

    /// `D` extended to `B_t` by the quotient rule:
    /// `D(n / t^k) = (t D(n) - k n D(t)) / t^(k+1)`.
    pub fn apply_localized(&self, e: &LocalizedElement) -> Result<LocalizedElement> {
        let t = e.inverted();
        let n = e.numerator();
        let dt = self.apply(t);
        if dt.is_zero() {
            return LocalizedElement::new(self.apply(n), t.clone(), e.exponent());
        }
        let k = self.ring.constant(num_rational::BigRational::from_integer(e.exponent().into()));
        let num = &(t * &self.apply(n)) - &(&(&k * n) * &dt);
        LocalizedElement::new(num, t.clone(), e.exponent() + 1)
    }

    /// Least `m <= bound` with `D^m(f) = 0`. Zero and kernel elements have index 1.
    pub fn nilpotency_index(&self, f: &RingElement, bound: u32) -> Nilpotency {
        let mut g = f.clone();
        for m in 1..=bound {
            g = self.apply(&g);
            if g.is_zero() {
                return Nilpotency::Index(m);
            }
        }
        Nilpotency::Inconclusive(bound)
    }

    /// Certify local nilpotency by checking that every generator is
    /// annihilated by some power of `D` within `bound` steps. In
    /// characteristic zero this implies `D` is locally nilpotent on `B`.
    pub fn certify(&self, bound: u32) -> NilpotencyCertificate {
        let per_generator_index: Vec<(String, Nilpotency)> = self
            .ring
            .gens()
            .iter()
            .zip(self.ring.variables())
            .map(|(g, name)| (name.clone(), self.nilpotency_index(g, bound)))
            .collect();
        let certified = per_generator_index.iter().all(|(_, n)| n.index().is_some());
        let global_bound_hint = per_generator_index.iter().filter_map(|(_, n)| n.index()).max().unwrap_or(1);
        NilpotencyCertificate {
            derivation: self.clone(),
            per_generator_index,
            global_bound_hint,
            status: if certified { CertStatus::Certified } else { CertStatus::Inconclusive(bound) },
        }
    }

    /// Extend `D` to `B[name]` by sending the new variable to `image`
    /// (a polynomial in any subset of the new ring's variables). With image 1
    /// the new variable is a slice of the extension.
    pub fn extend_with_new_variable(&self, name: &str, image: &Polynomial) -> Result<(Ring, Derivation)> {
        let ring = self.ring.extend(name)?;
        let mut images = self.images.iter().map(|im| ring.element(im.repr())).collect::<Result<Vec<_>>>()?;
        images.push(ring.element(image)?);
        let d = Derivation::new(&ring, format!("{}~", self.label), images)?;
        Ok((ring, d))
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.label)?;
        for (i, (name, im)) in self.ring.variables().iter().zip(&self.images).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name} -> {im}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({self})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    Index(u32),
    Inconclusive(u32),
}

impl Nilpotency {
    pub fn index(self) -> Option<u32> {
        match self {
            Nilpotency::Index(m) => Some(m),
            Nilpotency::Inconclusive(_) => None,
        }
    }
}

impl fmt::Display for Nilpotency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nilpotency::Index(m) => write!(f, "{m}"),
            Nilpotency::Inconclusive(b) => write!(f, "inconclusive({b})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertStatus {
    Certified,
    Inconclusive(u32),
}

#[derive(Clone, Debug)]
pub struct NilpotencyCertificate {
    derivation: Derivation,
    per_generator_index: Vec<(String, Nilpotency)>,
    global_bound_hint: u32,
    status: CertStatus,
}

impl NilpotencyCertificate {
    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    pub fn status(&self) -> CertStatus {
        self.status
    }

    pub fn is_certified(&self) -> bool {
        self.status == CertStatus::Certified
    }

    pub fn per_generator_index(&self) -> &[(String, Nilpotency)] {
        &self.per_generator_index
    }

    pub fn index_of(&self, var: &str) -> Option<Nilpotency> {
        self.per_generator_index.iter().find(|(n, _)| n == var).map(|(_, i)| *i)
    }

    /// Largest generator index.
    pub fn global_bound_hint(&self) -> u32 {
        self.global_bound_hint
    }

    /// Upper bound on the nilpotency index of any element whose normal form
    /// has degree at most `degree`: a monomial of degree `d` in generators of
    /// index at most `m` dies after `d (m - 1) + 1` applications.
    pub fn index_bound_for_degree(&self, degree: u32) -> u32 {
        degree * self.global_bound_hint.saturating_sub(1) + 1
    }

    /// The derivation, if certification succeeded.
    pub fn certified(&self) -> Result<&Derivation> {
        if self.is_certified() {
            Ok(&self.derivation)
        } else {
            Err(Error::UncertifiedDerivation(self.derivation.label.clone()))
        }
    }
}

impl fmt::Display for NilpotencyCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            CertStatus::Certified => write!(f, "{}: locally nilpotent", self.derivation.label)?,
            CertStatus::Inconclusive(b) => write!(f, "{}: inconclusive at bound {b}", self.derivation.label)?,
        }
        for (name, idx) in &self.per_generator_index {
            write!(f, "\n  index of {name}: {idx}")?;
        }
        Ok(())
    }
}
