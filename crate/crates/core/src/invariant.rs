//! Bounded-degree linear algebra over `Q` for kernels and subalgebras.
//!
//! A [`SpanBasis`] is a finite-dimensional snapshot: a subspace of the
//! elements of `B` whose normal form has total degree at most `d`, written in
//! the basis of standard monomials of degree `<= d` ("the frame"). Kernels,
//! subalgebra spans and their intersections all live in the same frame, so
//! comparing them is exact linear algebra.
//!
//! All answers are one-sided: a trivial intersection at degree `d` says
//! nothing about elements of higher degree.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::derivation::{Derivation, NilpotencyCertificate};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Echelon};
use crate::poly::{Monomial, Polynomial};
use crate::ring::{Ring, RingElement};

/// Guards against frames too large to reduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of monomials (or power products) in a frame.
    pub max_frame: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_frame: 20_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Kernel { derivation: String, degree: u32 },
    Subalgebra { generators: Vec<String>, degree: u32 },
    Intersection(Vec<Provenance>),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Kernel { derivation, degree } => write!(f, "ker {derivation} (deg <= {degree})"),
            Provenance::Subalgebra { generators, degree } => {
                write!(f, "Q[{}] (deg <= {degree})", generators.join(", "))
            }
            Provenance::Intersection(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", parts.join(" /\\ "))
            }
        }
    }
}

/// Standard monomials of degree `<= degree`, largest first under the ring order.
#[derive(Debug)]
pub struct Frame {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Frame {
    pub fn new(ring: &Ring, degree: u32, limits: Limits) -> Result<Frame> {
        let needed = binomial(ring.nvars() as u64 + degree as u64, degree as u64);
        if needed > limits.max_frame as u64 {
            return Err(Error::ResourceBound { cap: limits.max_frame, needed: needed as usize });
        }
        let mut monomials: Vec<Monomial> =
            Monomial::all_up_to_degree(ring.nvars(), degree).into_iter().filter(|m| ring.is_standard(m)).collect();
        let order = ring.order();
        monomials.sort_by(|a, b| order.cmp(b, a));
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(Frame { monomials, index })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

#[derive(Clone, Debug)]
pub struct SpanBasis {
    ring: Ring,
    degree_bound: u32,
    frame: Arc<Frame>,
    space: Echelon,
    provenance: Provenance,
}

impl SpanBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn frame(&self) -> &[Monomial] {
        &self.frame.monomials
    }

    pub fn echelon(&self) -> &Echelon {
        &self.space
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn dim(&self) -> usize {
        self.space.rank()
    }

    /// The basis rows decoded as ring elements. Each is monic with its
    /// leading monomial at the row's pivot.
    pub fn elements(&self) -> Vec<RingElement> {
        self.space.rows().iter().map(|r| self.decode(r)).collect()
    }

    fn decode(&self, row: &[BigRational]) -> RingElement {
        let ctx = self.ring.context();
        let p = Polynomial::from_terms(
            ctx,
            row.iter().zip(&self.frame.monomials).filter(|(c, _)| !c.is_zero()).map(|(c, m)| (m.clone(), c.clone())),
        );
        self.ring.element_unchecked(p)
    }

    fn encode(&self, f: &RingElement) -> Result<Vec<BigRational>> {
        encode(&self.ring, &self.frame, self.degree_bound, f)
    }

    /// Whether `f` lies in the span. Errors if `deg f` exceeds the bound.
    pub fn contains(&self, f: &RingElement) -> Result<bool> {
        Ok(self.space.contains(&self.encode(f)?))
    }

    fn compatible(&self, other: &SpanBasis) -> Result<()> {
        if self.ring != other.ring || self.degree_bound != other.degree_bound {
            return Err(Error::SpanMismatch);
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &SpanBasis) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.space.is_subspace_of(&other.space))
    }

    pub fn same_span(&self, other: &SpanBasis) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.space == other.space)
    }

    /// `span{1}`: only the constants survive at this degree.
    pub fn is_trivial(&self) -> bool {
        self.dim() == 1 && self.contains(&self.ring.one()).unwrap_or(false)
    }

    /// Rewrite into a larger degree bound (same ring). Used for monotonicity
    /// checks between bounds.
    pub fn lift(&self, degree: u32, limits: Limits) -> Result<SpanBasis> {
        if degree < self.degree_bound {
            return Err(Error::SpanMismatch);
        }
        let frame = Arc::new(Frame::new(&self.ring, degree, limits)?);
        let rows = self.elements().iter().map(|e| encode(&self.ring, &frame, degree, e)).collect::<Result<Vec<_>>>()?;
        Ok(SpanBasis {
            ring: self.ring.clone(),
            degree_bound: degree,
            space: Echelon::from_rows(&rows, frame.len()),
            frame,
            provenance: self.provenance.clone(),
        })
    }
}

impl fmt::Display for SpanBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "span{{{}}}", elems.join(", "))
    }
}

fn encode(ring: &Ring, frame: &Frame, bound: u32, f: &RingElement) -> Result<Vec<BigRational>> {
    if f.ring() != ring {
        return Err(Error::RingMismatch);
    }
    if let Some(deg) = f.degree() {
        if deg > bound {
            return Err(Error::DegreeOverflow { degree: deg, bound });
        }
    }
    let mut v = vec![BigRational::zero(); frame.len()];
    for (m, c) in f.repr().terms() {
        // normal forms only contain standard monomials
        let i = frame.index[m];
        v[i] = c.clone();
    }
    Ok(v)
}

/// `{ f : deg f <= d, D(f) = 0 }`, the nullspace of `f -> D(f)` restricted
/// to the degree-`d` frame. Images are written in whatever monomials they
/// use; a single Leibniz step raises degree by at most
/// `max_i deg D(X_i) - 1`, so the target stays finite.
pub fn kernel_basis_bounded(d: &Derivation, degree: u32, limits: Limits) -> Result<SpanBasis> {
    let ring = d.ring();
    let frame = Arc::new(Frame::new(ring, degree, limits)?);
    let mut target: HashMap<Monomial, usize> = HashMap::new();
    let mut columns: Vec<Vec<(usize, BigRational)>> = Vec::with_capacity(frame.len());
    for m in &frame.monomials {
        let e = ring.element_unchecked(Polynomial::term(ring.context(), m.clone(), BigRational::one()));
        let img = d.apply(&e);
        let mut col = Vec::new();
        for (tm, c) in img.repr().terms() {
            let next = target.len();
            let row = *target.entry(tm.clone()).or_insert(next);
            col.push((row, c.clone()));
        }
        if target.len() > limits.max_frame {
            return Err(Error::ResourceBound { cap: limits.max_frame, needed: target.len() });
        }
        columns.push(col);
    }
    let mut matrix = vec![vec![BigRational::zero(); frame.len()]; target.len()];
    for (j, col) in columns.into_iter().enumerate() {
        for (i, c) in col {
            matrix[i][j] = c;
        }
    }
    let basis = nullspace(&matrix, frame.len());
    Ok(SpanBasis {
        ring: ring.clone(),
        degree_bound: degree,
        space: Echelon::from_rows(&basis, frame.len()),
        frame,
        provenance: Provenance::Kernel { derivation: d.label().to_string(), degree },
    })
}

/// Span of the power products of `gens` with at most `degree` factors whose
/// normal form has degree `<= degree`. Constant generators add nothing and
/// are skipped. With no generators this is `span{1}`.
pub fn subalgebra_span_bounded(ring: &Ring, gens: &[RingElement], degree: u32, limits: Limits) -> Result<SpanBasis> {
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    let frame = Arc::new(Frame::new(ring, degree, limits)?);
    let usable: Vec<&RingElement> = gens.iter().filter(|g| g.constant_value().is_none()).collect();
    let count = binomial(usable.len() as u64 + degree as u64, degree as u64);
    if count > limits.max_frame as u64 {
        return Err(Error::ResourceBound { cap: limits.max_frame, needed: count as usize });
    }

    // products indexed by non-decreasing generator sequences
    let mut rows = Vec::new();
    let mut layer: Vec<(usize, RingElement)> = vec![(0, ring.one())];
    for _ in 0..=degree {
        let mut next = Vec::new();
        for (start, p) in &layer {
            if p.degree().is_none_or(|d| d <= degree) {
                rows.push(encode(ring, &frame, degree, p)?);
            }
            for (i, g) in usable.iter().enumerate().skip(*start) {
                next.push((i, p * *g));
            }
        }
        layer = next;
    }
    Ok(SpanBasis {
        ring: ring.clone(),
        degree_bound: degree,
        space: Echelon::from_rows(&rows, frame.len()),
        frame,
        provenance: Provenance::Subalgebra { generators: gens.iter().map(|g| g.to_string()).collect(), degree },
    })
}

/// Exact intersection of row spaces.
pub fn intersect_spans(bases: &[&SpanBasis]) -> Result<SpanBasis> {
    let first = *bases.first().ok_or(Error::EmptyFamily)?;
    for b in &bases[1..] {
        first.compatible(b)?;
    }
    let spaces: Vec<&Echelon> = bases.iter().map(|b| &b.space).collect();
    Ok(SpanBasis {
        ring: first.ring.clone(),
        degree_bound: first.degree_bound,
        frame: first.frame.clone(),
        space: Echelon::intersect_all(&spaces),
        provenance: Provenance::Intersection(bases.iter().map(|b| b.provenance.clone()).collect()),
    })
}

/// Degree-`d` part of the intersection of the kernels of a family of
/// derivations with verified slices: an upper bound for `ML*(B)` relative to
/// that family. `span{1}` certifies triviality up to degree `d`.
pub fn ml_star_estimate_bounded(
    family: &[(&NilpotencyCertificate, &RingElement)],
    degree: u32,
    limits: Limits,
) -> Result<SpanBasis> {
    let mut kernels = Vec::with_capacity(family.len());
    for (cert, s) in family {
        let d = cert.certified()?;
        let image = d.apply(s);
        if !image.is_one() {
            return Err(Error::NotASlice { s: s.to_string(), image: image.to_string() });
        }
        kernels.push(kernel_basis_bounded(d, degree, limits)?);
    }
    let refs: Vec<&SpanBasis> = kernels.iter().collect();
    intersect_spans(&refs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distinctness {
    /// `witness` lies in the bounded kernel of derivation `in_kernel_of`
    /// (0 or 1) but not in the other.
    Distinct { witness: RingElement, in_kernel_of: usize },
    /// No element of degree `<= d` separates the kernels.
    NotRefuted,
}

/// Look for an element of degree `<= d` in exactly one of the two kernels.
/// Prefers the lowest-degree witness.
pub fn kernels_distinct_bounded(d1: &Derivation, d2: &Derivation, degree: u32, limits: Limits) -> Result<Distinctness> {
    if d1.ring() != d2.ring() {
        return Err(Error::RingMismatch);
    }
    let k = [kernel_basis_bounded(d1, degree, limits)?, kernel_basis_bounded(d2, degree, limits)?];
    let mut best: Option<(u32, usize, RingElement)> = None;
    for side in 0..2 {
        for e in k[side].elements() {
            if !k[1 - side].contains(&e)? {
                let deg = e.degree().unwrap_or(0);
                if best.as_ref().is_none_or(|(bd, _, _)| deg < *bd) {
                    best = Some((deg, side, e));
                }
            }
        }
    }
    Ok(match best {
        Some((_, side, witness)) => Distinctness::Distinct { witness, in_kernel_of: side },
        None => Distinctness::NotRefuted,
    })
}

/// Whether `f` lies in `span` (exact solve). Errors on degree overflow.
pub fn membership_in_span(f: &RingElement, span: &SpanBasis) -> Result<bool> {
    span.contains(f)
}
