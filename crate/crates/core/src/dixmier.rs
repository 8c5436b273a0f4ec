//! Slices, local slices, the Dixmier map and kernels of derivations with a
//! slice.
//!
//! For a locally nilpotent `D` and a local slice `r` (so `t = D(r)` is
//! nonzero and `D(t) = 0`), the Dixmier map is the ring homomorphism
//! `pi_r : B -> B_t`,
//!
//! ```text
//! pi_r(f) = sum_{i >= 0} (-1)^i / i! * D^i(f) * r^i / t^i
//! ```
//!
//! The sum is finite because `D` is locally nilpotent, and its image lies in
//! the kernel of the extension of `D` to `B_t`. When `r = s` is a slice
//! (`t = 1`), `pi_s` maps `B` onto `ker D` and `B = (ker D)[s]`, so the images
//! of the generators generate the kernel as an algebra.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::derivation::{Derivation, NilpotencyCertificate};
use crate::error::{Error, Result};
use crate::poly::Monomial;
use crate::ring::{LocalizedElement, RingElement};

/// Linear combinations are only scanned up to this many variables.
const MAX_TEMPLATE_VARS: usize = 8;

#[derive(Clone, Debug)]
pub struct SliceReport {
    pub derivation: Derivation,
    /// Elements `s` with `D(s) = 1`.
    pub slices: Vec<RingElement>,
    /// Pairs `(r, t)` with `D(r) = t`, `t` non-constant and `D(t) = 0`.
    pub local_slices: Vec<(RingElement, RingElement)>,
    pub search_space: String,
}

impl SliceReport {
    pub fn has_slice(&self) -> bool {
        !self.slices.is_empty()
    }
}

/// Scan a fixed candidate set for slices and local slices: the ring
/// variables, then `extra`, then every combination `sum c_i X_i` with
/// `c_i` in {-1, 0, 1} (first nonzero coefficient +1). An empty report only
/// means nothing was found in that set.
pub fn find_slices(d: &Derivation, extra: &[RingElement]) -> SliceReport {
    let ring = d.ring();
    let n = ring.nvars();
    let mut candidates: Vec<RingElement> = ring.gens();
    candidates.extend(extra.iter().filter(|e| e.ring() == ring).cloned());
    let scan_templates = n <= MAX_TEMPLATE_VARS;
    if scan_templates {
        let gens = ring.gens();
        let total = 3usize.pow(n as u32);
        for code in 1..total {
            let mut digits = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                digits.push((c % 3) as i64 - 1);
                c /= 3;
            }
            let Some(first) = digits.iter().position(|&x| x != 0) else { continue };
            if digits[first] != 1 || digits.iter().filter(|&&x| x != 0).count() < 2 {
                continue;
            }
            let mut acc = ring.zero();
            for (g, &c) in gens.iter().zip(&digits) {
                match c {
                    1 => acc = &acc + g,
                    -1 => acc = &acc - g,
                    _ => {}
                }
            }
            candidates.push(acc);
        }
    }

    let mut seen: Vec<RingElement> = Vec::new();
    let mut slices: Vec<RingElement> = Vec::new();
    let mut local_slices = Vec::new();
    for r in candidates {
        if seen.contains(&r) {
            continue;
        }
        seen.push(r.clone());
        let t = d.apply(&r);
        if t.is_zero() {
            continue;
        }
        if let Some(c) = t.constant_value() {
            let s = r.scale(&c.recip());
            if !slices.contains(&s) {
                slices.push(s);
            }
        } else if d.apply(&t).is_zero() {
            local_slices.push((r, t));
        }
    }

    let search_space = format!(
        "{} variables, {} extra candidates{}",
        n,
        extra.len(),
        if scan_templates {
            ", all {-1,0,1}-combinations of variables".to_string()
        } else {
            format!("; combinations skipped (more than {MAX_TEMPLATE_VARS} variables)")
        }
    );
    SliceReport { derivation: d.clone(), slices, local_slices, search_space }
}

/// Result of the Dixmier map: in `B` when the local slice has constant
/// image, otherwise in `B_t`.
#[derive(Clone, Debug)]
pub enum DixmierImage {
    InRing(RingElement),
    Localized(LocalizedElement),
}

impl DixmierImage {
    pub fn as_element(&self) -> Option<&RingElement> {
        match self {
            DixmierImage::InRing(e) => Some(e),
            DixmierImage::Localized(_) => None,
        }
    }

    /// The image as a fraction over `t`, whichever form it was returned in.
    pub fn to_localized(&self, t: &RingElement) -> Result<LocalizedElement> {
        match self {
            DixmierImage::InRing(e) => LocalizedElement::from_element(e.clone(), t.clone()),
            DixmierImage::Localized(l) => Ok(l.clone()),
        }
    }
}

impl fmt::Display for DixmierImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DixmierImage::InRing(e) => e.fmt(f),
            DixmierImage::Localized(l) => l.fmt(f),
        }
    }
}

/// `D^0 f, D^1 f, ...` up to the last nonzero iterate.
fn iterates(d: &Derivation, cert: &NilpotencyCertificate, f: &RingElement) -> Result<Vec<RingElement>> {
    let cap = cert.index_bound_for_degree(f.degree().unwrap_or(0));
    let mut out = Vec::new();
    let mut g = f.clone();
    while !g.is_zero() {
        if out.len() as u32 >= cap {
            return Err(Error::NilpotencyBoundExceeded(cap));
        }
        let next = d.apply(&g);
        out.push(g);
        g = next;
    }
    Ok(out)
}

/// `pi_r(f)` for a local slice `r` of the certified derivation.
pub fn dixmier_apply(cert: &NilpotencyCertificate, r: &RingElement, f: &RingElement) -> Result<DixmierImage> {
    let d = cert.certified()?;
    let ring = d.ring();
    if r.ring() != ring || f.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let t = d.apply(r);
    if t.is_zero() || !d.apply(&t).is_zero() {
        return Err(Error::NotLocalSlice { r: r.to_string(), image: t.to_string() });
    }
    let iters = iterates(d, cert, f)?;

    // coefficient (-1)^i / i!
    let coeff = |i: usize| {
        let mut fact = BigInt::one();
        for k in 2..=i {
            fact *= k;
        }
        let sign = if i.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        BigRational::new(sign, fact)
    };

    if let Some(c) = t.constant_value() {
        let r_over_t = r.scale(&c.recip());
        let mut acc = ring.zero();
        let mut power = ring.one();
        for (i, g) in iters.iter().enumerate() {
            acc = &acc + &(g * &power).scale(&coeff(i));
            power = &power * &r_over_t;
        }
        return Ok(DixmierImage::InRing(acc));
    }

    if iters.is_empty() {
        return Ok(DixmierImage::InRing(ring.zero()));
    }
    let top = iters.len() - 1;
    let mut acc = ring.zero();
    for (i, g) in iters.iter().enumerate() {
        let term = &(g * &r.pow(i as u32)) * &t.pow((top - i) as u32);
        acc = &acc + &term.scale(&coeff(i));
    }
    Ok(DixmierImage::Localized(LocalizedElement::new(acc, t, top as u32)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelVia {
    SliceTheorem(RingElement),
    BoundedLinearAlgebra(u32),
}

#[derive(Clone, Debug)]
pub struct KernelPresentation {
    pub derivation: Derivation,
    pub generators: Vec<RingElement>,
    pub via: KernelVia,
}

/// Generators of `ker D` as the images `pi_s(X_i)` of the ring variables
/// under the Dixmier map of a slice `s`.
pub fn kernel_via_slice(cert: &NilpotencyCertificate, s: &RingElement) -> Result<KernelPresentation> {
    let d = cert.certified()?;
    let image = d.apply(s);
    if !image.is_one() {
        return Err(Error::NotASlice { s: s.to_string(), image: image.to_string() });
    }
    let mut gens = Vec::new();
    for x in d.ring().gens() {
        match dixmier_apply(cert, s, &x)? {
            DixmierImage::InRing(e) => gens.push(e),
            DixmierImage::Localized(_) => unreachable!("slice images stay in the ring"),
        }
    }
    Ok(KernelPresentation {
        derivation: d.clone(),
        generators: normalize_generators(gens),
        via: KernelVia::SliceTheorem(s.clone()),
    })
}

/// Canonical form for a generating set: constants dropped, each element made
/// monic under the ring order, duplicates removed, sorted by leading term.
pub fn normalize_generators(gens: Vec<RingElement>) -> Vec<RingElement> {
    let mut out: Vec<RingElement> =
        gens.into_iter().filter(|g| g.constant_value().is_none()).map(|g| g.monic()).collect();
    out.sort_by(cmp_elements);
    out.dedup();
    out
}

/// Total order on elements of one ring: compare term lists from the largest
/// monomial down, then coefficients.
pub fn cmp_elements(a: &RingElement, b: &RingElement) -> Ordering {
    let order = a.ring().order();
    let ta = a.repr().sorted_terms(order);
    let tb = b.repr().sorted_terms(order);
    for ((ma, ca), (mb, cb)) in ta.iter().zip(&tb) {
        match order.cmp(ma, mb).then_with(|| ca.cmp(cb)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    ta.len().cmp(&tb.len())
}

/// Leading monomial of a nonzero element.
pub fn leading_monomial(e: &RingElement) -> Option<Monomial> {
    e.repr().leading_term(e.ring().order()).map(|(m, _)| m.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::DEFAULT_NILPOTENCY_BOUND;
    use crate::poly::OrderKind;
    use crate::poly::Polynomial;
    use crate::ring::Ring;

    fn cylinder() -> (Ring, Derivation, Derivation) {
        let b = Ring::parse(&["X", "Y", "Z", "T"], &["X*Y - Z^2 - 1"], OrderKind::Grevlex).unwrap();
        let d1 = Derivation::from_strs(&b, "D1", &[("X", "0"), ("Y", "2*Z"), ("Z", "X"), ("T", "1")]).unwrap();
        let d2 = Derivation::from_strs(&b, "D2", &[("X", "2*Z"), ("Y", "0"), ("Z", "Y"), ("T", "1")]).unwrap();
        (b, d1, d2)
    }

    fn threefold() -> (Ring, Vec<Derivation>) {
        let b = Ring::parse(&["X", "Y", "Z", "T"], &["X*Y - Z*T - 1"], OrderKind::Grevlex).unwrap();
        let tables = [
            [("X", "0"), ("Y", "Z"), ("Z", "0"), ("T", "X")],
            [("X", "0"), ("Y", "T"), ("Z", "X"), ("T", "0")],
            [("X", "Z"), ("Y", "0"), ("Z", "0"), ("T", "Y")],
            [("X", "T"), ("Y", "0"), ("Z", "Y"), ("T", "0")],
        ];
        let ds = tables
            .iter()
            .enumerate()
            .map(|(i, t)| Derivation::from_strs(&b, format!("D{}", i + 1), t).unwrap())
            .collect();
        (b, ds)
    }

    fn elems(b: &Ring, xs: &[&str]) -> Vec<RingElement> {
        normalize_generators(xs.iter().map(|x| b.parse_element(x).unwrap()).collect())
    }

    #[test]
    fn slice_t_is_found() {
        let (b, d1, _) = cylinder();
        let rep = find_slices(&d1, &[]);
        assert!(rep.slices.contains(&b.var("T").unwrap()));
        for s in &rep.slices {
            assert!(d1.apply(s).is_one());
        }
        for (r, t) in &rep.local_slices {
            assert_eq!(&d1.apply(r), t);
            assert!(d1.apply(t).is_zero());
        }
    }

    #[test]
    fn local_slices_without_slices() {
        let (b, ds) = threefold();
        let rep = find_slices(&ds[0], &[]);
        assert!(rep.slices.is_empty());
        let y = b.var("Y").unwrap();
        let z = b.var("Z").unwrap();
        assert!(rep.local_slices.contains(&(y, z)));
        let zero = Derivation::zero(&b, "0");
        let rep = find_slices(&zero, &[]);
        assert!(rep.slices.is_empty() && rep.local_slices.is_empty());
    }

    #[test]
    fn dixmier_image_of_y() {
        let (b, d1, _) = cylinder();
        let cert = d1.certify(DEFAULT_NILPOTENCY_BOUND);
        let t = b.var("T").unwrap();
        let img = dixmier_apply(&cert, &t, &b.var("Y").unwrap()).unwrap();
        assert_eq!(img.as_element().unwrap(), &b.parse_element("Y - 2*Z*T + X*T^2").unwrap());
        let img = dixmier_apply(&cert, &t, &t).unwrap();
        assert!(img.as_element().unwrap().is_zero());
    }

    #[test]
    fn dixmier_with_a_local_slice() {
        let (b, ds) = threefold();
        let cert = ds[1].certify(DEFAULT_NILPOTENCY_BOUND);
        let (x, y, z, t) = (b.var("X").unwrap(), b.var("Y").unwrap(), b.var("Z").unwrap(), b.var("T").unwrap());
        let img = dixmier_apply(&cert, &z, &y).unwrap();
        // y - t z / x, i.e. (x y - t z) / x
        let want = LocalizedElement::new(&(&x * &y) - &(&t * &z), x.clone(), 1).unwrap();
        let got = img.to_localized(&x).unwrap();
        assert!(got.equals(&want).unwrap());
        // x y - z t = 1 in B, so the image is 1/x
        assert!(got.equals(&LocalizedElement::new(b.one(), x.clone(), 1).unwrap()).unwrap());
        assert!(cert.derivation().apply_localized(&got).unwrap().is_zero());
    }

    #[test]
    fn dixmier_errors() {
        let (b, d1, _) = cylinder();
        let cert = d1.certify(DEFAULT_NILPOTENCY_BOUND);
        // D1(y) = 2z, D1(2z) = 2x != 0
        assert!(matches!(dixmier_apply(&cert, &b.var("Y").unwrap(), &b.one()), Err(Error::NotLocalSlice { .. })));
        let k = Ring::free(&["X"]).unwrap();
        let euler = Derivation::from_strs(&k, "E", &[("X", "X")]).unwrap();
        let cert = euler.certify(10);
        assert!(matches!(dixmier_apply(&cert, &k.var("X").unwrap(), &k.one()), Err(Error::UncertifiedDerivation(_))));
    }

    #[test]
    fn kernels_via_slice_match_known_generators() {
        let (b, d1, d2) = cylinder();
        let t = b.var("T").unwrap();
        let k1 = kernel_via_slice(&d1.certify(64), &t).unwrap();
        assert_eq!(k1.generators, elems(&b, &["X", "Y - 2*Z*T + X*T^2", "Z - X*T"]));
        let k2 = kernel_via_slice(&d2.certify(64), &t).unwrap();
        assert_eq!(k2.generators, elems(&b, &["Y", "X - 2*Z*T + Y*T^2", "Z - Y*T"]));
        assert!(matches!(kernel_via_slice(&d1.certify(64), &b.var("Z").unwrap()), Err(Error::NotASlice { .. })));
    }

    #[test]
    fn kernel_of_extension() {
        let (b, ds) = threefold();
        let one = Polynomial::one(b.context());
        let (bu, e1) = ds[0].extend_with_new_variable("U", &one).unwrap();
        let k = kernel_via_slice(&e1.certify(64), &bu.var("U").unwrap()).unwrap();
        assert_eq!(k.generators, elems(&bu, &["X", "Z", "Y - Z*U", "T - X*U"]));
    }

    #[test]
    fn dimension_four_kernels() {
        let b = Ring::parse(&["X", "Y", "Z", "U", "V", "T"], &["X^2 + Y^3 + Z^7", "X*U - Y*V - 1"], OrderKind::Grevlex)
            .unwrap();
        let d1 =
            Derivation::from_strs(&b, "d1", &[("X", "0"), ("Y", "0"), ("Z", "0"), ("U", "Y"), ("V", "X"), ("T", "1")])
                .unwrap();
        let d2 = Derivation::from_strs(
            &b,
            "d2",
            &[("X", "0"), ("Y", "0"), ("Z", "0"), ("U", "Y*T"), ("V", "X*T"), ("T", "1")],
        )
        .unwrap();
        let t = b.var("T").unwrap();
        let k1 = kernel_via_slice(&d1.certify(64), &t).unwrap();
        assert_eq!(k1.generators, elems(&b, &["X", "Y", "Z", "U - Y*T", "V - X*T"]));
        let k2 = kernel_via_slice(&d2.certify(64), &t).unwrap();
        assert_eq!(k2.generators, elems(&b, &["X", "Y", "Z", "2*U - Y*T^2", "2*V - X*T^2"]));
    }
}
