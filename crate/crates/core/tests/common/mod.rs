#![allow(dead_code)]

use lnd_core::{Derivation, OrderKind, Ring};

pub fn derivation(ring: &Ring, label: &str, images: &[(&str, &str)]) -> Derivation {
    Derivation::from_strs(ring, label, images).unwrap()
}

/// `R[T]` with `R = Q[X,Y,Z]/(XY - Z^2 - 1)` and its two derivations with slice `T`.
pub fn cylinder() -> (Ring, Derivation, Derivation) {
    let b = Ring::parse(&["X", "Y", "Z", "T"], &["X*Y - Z^2 - 1"], OrderKind::Grevlex).unwrap();
    let d1 = derivation(&b, "D1", &[("X", "0"), ("Y", "2*Z"), ("Z", "X"), ("T", "1")]);
    let d2 = derivation(&b, "D2", &[("X", "2*Z"), ("Y", "0"), ("Z", "Y"), ("T", "1")]);
    (b, d1, d2)
}

/// The threefold `XY - ZT - 1` with its four coordinate-like derivations.
pub fn threefold() -> (Ring, Vec<Derivation>) {
    let b = Ring::parse(&["X", "Y", "Z", "T"], &["X*Y - Z*T - 1"], OrderKind::Grevlex).unwrap();
    let ds = vec![
        derivation(&b, "D1", &[("X", "0"), ("Y", "Z"), ("Z", "0"), ("T", "X")]),
        derivation(&b, "D2", &[("X", "0"), ("Y", "T"), ("Z", "X"), ("T", "0")]),
        derivation(&b, "D3", &[("X", "Z"), ("Y", "0"), ("Z", "0"), ("T", "Y")]),
        derivation(&b, "D4", &[("X", "T"), ("Y", "0"), ("Z", "Y"), ("T", "0")]),
    ];
    (b, ds)
}

/// `B[U]` over the threefold: the four extensions with `U -> 1` and `d/dU`.
pub fn threefold_u() -> (Ring, Vec<Derivation>) {
    let (b, ds) = threefold();
    let one = lnd_core::Polynomial::one(b.context());
    let mut out = Vec::new();
    let mut ring = None;
    for d in &ds {
        let (bu, e) = d.extend_with_new_variable("U", &one).unwrap();
        ring.get_or_insert(bu);
        out.push(e);
    }
    let (bu, e5) = Derivation::zero(&b, "0").extend_with_new_variable("U", &one).unwrap();
    out.push(e5.with_label("D5~"));
    (ring.unwrap_or(bu), out)
}

/// `C[T]`, `C = R[U,V]/(xU - yV - 1)`, `R = Q[X,Y,Z]/(X^2 + Y^3 + Z^7)`.
pub fn tower() -> (Ring, Derivation, Derivation) {
    let b = Ring::parse(&["X", "Y", "Z", "U", "V", "T"], &["X^2 + Y^3 + Z^7", "X*U - Y*V - 1"], OrderKind::Grevlex)
        .unwrap();
    let d1 = derivation(&b, "delta1", &[("X", "0"), ("Y", "0"), ("Z", "0"), ("U", "Y"), ("V", "X"), ("T", "1")]);
    let d2 = derivation(&b, "delta2", &[("X", "0"), ("Y", "0"), ("Z", "0"), ("U", "Y*T"), ("V", "X*T"), ("T", "1")]);
    (b, d1, d2)
}

/// Danielewski surface `X^2 Z - Y^2` with `D(y) = x^2`, `D(z) = 2y`.
pub fn danielewski() -> (Ring, Derivation) {
    let b = Ring::parse(&["X", "Y", "Z"], &["X^2*Z - Y^2"], OrderKind::Grevlex).unwrap();
    let d = derivation(&b, "D", &[("X", "0"), ("Y", "X^2"), ("Z", "2*Y")]);
    (b, d)
}
