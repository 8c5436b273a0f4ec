//! Executing claims against a built fixture.

use std::fmt::Display;
use std::time::Instant;

use lnd_core::derivation::CertStatus;
use lnd_core::dixmier::{dixmier_apply, find_slices, kernel_via_slice, normalize_generators};
use lnd_core::invariant::{
    intersect_spans, kernel_basis_bounded, kernels_distinct_bounded, ml_star_estimate_bounded, subalgebra_span_bounded,
};
use lnd_core::{
    Derivation, Distinctness, Error, Limits, LocalizedElement, NilpotencyCertificate, OrderKind, Ring, RingElement,
    SpanBasis,
};

use crate::fixture::{images_of, Claim, Fixture, FixtureError, FixtureFile};
use crate::report::{overall, ClaimReport, Options, Status, VerificationReport};

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Degree bound for claims that do not set their own.
    pub degree: u32,
    /// Iteration bound for nilpotency searches.
    pub max_steps: u32,
    pub order: Option<OrderKind>,
    pub limits: Limits,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { degree: 3, max_steps: 64, order: None, limits: Limits::default() }
    }
}

impl RunOptions {
    fn summary(&self) -> Options {
        Options { degree: self.degree, max_steps: self.max_steps, order: self.order.map(|o| o.to_string()) }
    }
}

/// Build the fixture and evaluate every claim in file order. A failing claim
/// never stops the remaining ones; only an unloadable fixture is an error.
pub fn run_fixture(file: &FixtureFile, opts: &RunOptions) -> Result<VerificationReport, FixtureError> {
    let start = Instant::now();
    let fx = Fixture::build(file, opts.order)?;
    let claims: Vec<ClaimReport> = file.claims.iter().map(|c| run_claim(&fx, c, opts)).collect();
    Ok(VerificationReport {
        fixture: file.id.clone(),
        title: file.title.clone(),
        status: overall(&claims),
        options: opts.summary(),
        claims,
        millis: start.elapsed().as_millis() as u64,
    })
}

struct Outcome {
    status: Status,
    detail: String,
    witness: Option<String>,
    degree: Option<u32>,
    bound: Option<u32>,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome { status: Status::Pass, detail: detail.into(), witness: None, degree: None, bound: None }
    }

    fn fail(detail: impl Into<String>, witness: impl Display) -> Self {
        Outcome { status: Status::Fail, witness: Some(witness.to_string()), ..Outcome::pass(detail) }
    }

    fn inconclusive(detail: impl Into<String>, bound: u32) -> Self {
        Outcome { status: Status::Inconclusive, bound: Some(bound), ..Outcome::pass(detail) }
    }

    fn witness(mut self, w: impl Display) -> Self {
        self.witness = Some(w.to_string());
        self
    }

    fn at(mut self, degree: u32) -> Self {
        self.degree = Some(degree);
        self
    }
}

/// Errors inside a claim become failures of that claim.
fn err(e: impl Display) -> Outcome {
    Outcome { witness: None, ..Outcome::fail(format!("error: {e}"), "") }
}

type Step<T> = Result<T, Outcome>;

fn run_claim(fx: &Fixture, claim: &Claim, opts: &RunOptions) -> ClaimReport {
    let start = Instant::now();
    let out = evaluate(fx, claim, opts).unwrap_or_else(|o| o);
    ClaimReport {
        kind: claim.kind().to_string(),
        subject: subject(claim),
        status: out.status,
        degree: out.degree,
        bound: out.bound,
        detail: out.detail,
        witness: out.witness,
        millis: start.elapsed().as_millis() as u64,
    }
}

fn subject(claim: &Claim) -> String {
    match claim {
        Claim::Slice { derivation, slice } | Claim::KernelGenerators { derivation, slice, .. } => {
            format!("{derivation} via {slice}")
        }
        Claim::DixmierImage { derivation, r, element, .. } => format!("{derivation}: pi_{r}({element})"),
        Claim::NotWellDefined { images } => {
            let parts: Vec<String> = images.iter().map(|(k, v)| format!("{k}->{v}")).collect();
            parts.join(", ")
        }
        Claim::MlStarTrivial { derivations: None, .. } => "all derivations".into(),
        other => other.derivation_names().join(", "),
    }
}

fn derivation<'a>(fx: &'a Fixture, name: &str) -> Step<&'a Derivation> {
    fx.derivation(name).map_err(|e| Outcome::fail(format!("{name} is unusable"), e))
}

fn element(ring: &Ring, text: &str) -> Step<RingElement> {
    ring.parse_element(text).map_err(|e| err(format!("{text:?}: {e}")))
}

fn elements(ring: &Ring, texts: &[String]) -> Step<Vec<RingElement>> {
    texts.iter().map(|t| element(ring, t)).collect()
}

fn certificate(d: &Derivation, opts: &RunOptions) -> Step<NilpotencyCertificate> {
    let cert = d.certify(opts.max_steps);
    match cert.status() {
        CertStatus::Certified => Ok(cert),
        CertStatus::Inconclusive(b) => {
            Err(Outcome::inconclusive(format!("{} not shown nilpotent within {b} steps", d.label()), b))
        }
    }
}

fn same_ring<'a>(ds: &[&'a Derivation]) -> Step<&'a Ring> {
    let ring = ds.first().ok_or_else(|| err("no derivations given"))?.ring();
    if ds.iter().any(|d| d.ring() != ring) {
        return Err(err(Error::RingMismatch));
    }
    Ok(ring)
}

/// First element of `a` outside `b`.
fn outside(a: &SpanBasis, b: &SpanBasis) -> Step<Option<RingElement>> {
    for e in a.elements() {
        if !b.contains(&e).map_err(err)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Compare two spans, naming an element that separates them.
fn compare_spans(found: &SpanBasis, found_name: &str, expected: &SpanBasis, expected_name: &str) -> Step<Outcome> {
    if let Some(w) = outside(found, expected)? {
        return Ok(Outcome::fail(
            format!("{found_name} (dim {}) is not inside {expected_name} (dim {})", found.dim(), expected.dim()),
            w,
        ));
    }
    if let Some(w) = outside(expected, found)? {
        return Ok(Outcome::fail(
            format!("{expected_name} (dim {}) is not inside {found_name} (dim {})", expected.dim(), found.dim()),
            w,
        ));
    }
    Ok(Outcome::pass(format!("{found_name} = {expected_name}, dim {}", found.dim())))
}

fn kernels(fx: &Fixture, names: &[String], degree: u32, opts: &RunOptions) -> Step<Vec<SpanBasis>> {
    let ds: Vec<&Derivation> = names.iter().map(|n| derivation(fx, n)).collect::<Step<_>>()?;
    same_ring(&ds)?;
    ds.iter().map(|d| kernel_basis_bounded(d, degree, opts.limits).map_err(err)).collect()
}

fn intersection(fx: &Fixture, names: &[String], degree: u32, opts: &RunOptions) -> Step<SpanBasis> {
    let ks = kernels(fx, names, degree, opts)?;
    let refs: Vec<&SpanBasis> = ks.iter().collect();
    intersect_spans(&refs).map_err(err)
}

fn non_constant(span: &SpanBasis) -> Option<RingElement> {
    span.elements().into_iter().find(|e| e.constant_value().is_none())
}

fn join(es: &[RingElement]) -> String {
    let parts: Vec<String> = es.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn evaluate(fx: &Fixture, claim: &Claim, opts: &RunOptions) -> Step<Outcome> {
    let degree_or = |d: &Option<u32>| d.unwrap_or(opts.degree);
    match claim {
        Claim::LndCertified { derivation: name, indices, max_index } => {
            let d = derivation(fx, name)?;
            let cert = certificate(d, opts)?;
            let found: Vec<String> =
                cert.per_generator_index().iter().map(|(v, n)| format!("{v}={}", n.index().unwrap_or(0))).collect();
            for (v, want) in indices {
                match cert.index_of(v).and_then(|n| n.index()) {
                    Some(got) if got == *want => {}
                    Some(got) => {
                        return Ok(Outcome::fail(
                            format!("index of {v} is {got}, expected {want}"),
                            format!(
                                "D^{got}({v}) = 0, D^{}({v}) = {}",
                                got - 1,
                                d.apply_n(&element(d.ring(), v)?, got - 1)
                            ),
                        ))
                    }
                    None => return Ok(err(format!("unknown variable {v}"))),
                }
            }
            let max = cert.global_bound_hint();
            if let Some(m) = max_index {
                if max > *m {
                    return Ok(Outcome::fail(format!("largest index {max} exceeds {m}"), found.join(" ")));
                }
            }
            Ok(Outcome::pass(format!("locally nilpotent, indices {}", found.join(" "))))
        }

        Claim::Inconclusive { derivation: name, bound } => {
            let d = derivation(fx, name)?;
            let cert = d.certify(*bound);
            Ok(match cert.status() {
                CertStatus::Inconclusive(b) => {
                    let stuck = cert
                        .per_generator_index()
                        .iter()
                        .find(|(_, n)| n.index().is_none())
                        .map(|(v, _)| v.clone())
                        .unwrap_or_default();
                    Outcome::pass(format!("reported inconclusive at bound {b}")).witness(format!("D^{b}({stuck}) != 0"))
                }
                CertStatus::Certified => Outcome::fail(
                    format!("{name} was certified within {bound} steps"),
                    format!("max index {}", cert.global_bound_hint()),
                ),
            })
        }

        Claim::Slice { derivation: name, slice } => {
            let d = derivation(fx, name)?;
            let s = element(d.ring(), slice)?;
            let image = d.apply(&s);
            if !image.is_one() {
                return Ok(Outcome::fail(format!("{slice} is not a slice"), format!("D({slice}) = {image}")));
            }
            let report = find_slices(d, &[]);
            let found = report.slices.iter().any(|x| x == &s);
            Ok(if found {
                let shown: Vec<RingElement> = report.slices.iter().take(4).cloned().collect();
                let more = report.slices.len().saturating_sub(shown.len());
                let tail = if more > 0 { format!(" and {more} more") } else { String::new() };
                Outcome::pass(format!("D({slice}) = 1; search found {}{tail}", join(&shown)))
            } else {
                Outcome::fail(format!("D({slice}) = 1 but the search over {} missed it", report.search_space), slice)
            })
        }

        Claim::KernelGenerators { derivation: name, slice, generators } => {
            let d = derivation(fx, name)?;
            let cert = certificate(d, opts)?;
            let s = element(d.ring(), slice)?;
            let got = kernel_via_slice(&cert, &s).map_err(err)?.generators;
            let want = normalize_generators(elements(d.ring(), generators)?);
            if got == want {
                return Ok(Outcome::pass(format!("ker {name} = Q[{}]", join(&got).trim_matches(['{', '}']))));
            }
            if let Some(g) = want.iter().find(|g| !got.contains(g)) {
                let dg = d.apply(g);
                return Ok(if dg.is_zero() {
                    Outcome::fail(format!("expected generator {g} is not produced; computed {}", join(&got)), g)
                } else {
                    Outcome::fail(format!("expected generator {g} is not in the kernel"), format!("D({g}) = {dg}"))
                });
            }
            let extra = got.iter().find(|g| !want.contains(g)).expect("sets differ");
            Ok(Outcome::fail(format!("computed generator {extra} is not expected; expected {}", join(&want)), extra))
        }

        Claim::BoundedKernelBasis { derivation: name, degree, subalgebra, dimension } => {
            let deg = degree_or(degree);
            let d = derivation(fx, name)?;
            let k = kernel_basis_bounded(d, deg, opts.limits).map_err(err)?;
            if let Some(dim) = dimension {
                if k.dim() != *dim {
                    return Ok(Outcome::fail(format!("dimension {}, expected {dim}", k.dim()), k).at(deg));
                }
            }
            let out = match subalgebra {
                Some(gens) => {
                    let g = elements(d.ring(), gens)?;
                    let span = subalgebra_span_bounded(d.ring(), &g, deg, opts.limits).map_err(err)?;
                    compare_spans(&k, "kernel", &span, &format!("span of Q[{}]", gens.join(", ")))?
                }
                None => Outcome::pass(format!("dim {}", k.dim())),
            };
            Ok(out.at(deg))
        }

        Claim::IntersectionTrivial { derivations, degree } => {
            let deg = degree_or(degree);
            let meet = intersection(fx, derivations, deg, opts)?;
            Ok(match non_constant(&meet) {
                None if meet.dim() == 1 => Outcome::pass("intersection = span{1}"),
                None => Outcome::fail(format!("intersection has dim {}", meet.dim()), &meet),
                Some(w) => Outcome::fail(format!("intersection has dim {}", meet.dim()), w),
            }
            .at(deg))
        }

        Claim::IntersectionEquals { derivations, degree, subalgebra } => {
            let deg = degree_or(degree);
            let meet = intersection(fx, derivations, deg, opts)?;
            let g = elements(meet.ring(), subalgebra)?;
            let span = subalgebra_span_bounded(meet.ring(), &g, deg, opts.limits).map_err(err)?;
            Ok(compare_spans(&meet, "intersection", &span, &format!("span of Q[{}]", subalgebra.join(", ")))?.at(deg))
        }

        Claim::MlStarTrivial { derivations, degree } => {
            let deg = degree_or(degree);
            let family: Vec<&Derivation> = match derivations {
                Some(names) => names.iter().map(|n| derivation(fx, n)).collect::<Step<_>>()?,
                None => fx.base_derivations(),
            };
            same_ring(&family)?;
            let mut certs = Vec::new();
            let mut skipped = Vec::new();
            for d in &family {
                let cert = certificate(d, opts)?;
                match find_slices(d, &[]).slices.into_iter().next() {
                    Some(s) => certs.push((cert, s)),
                    None => skipped.push(d.label().to_string()),
                }
            }
            if certs.is_empty() {
                return Ok(Outcome::fail("no derivation in the family has a slice", "ML* = B by convention").at(deg));
            }
            let pairs: Vec<(&NilpotencyCertificate, &RingElement)> = certs.iter().map(|(c, s)| (c, s)).collect();
            let est = ml_star_estimate_bounded(&pairs, deg, opts.limits).map_err(err)?;
            let used: Vec<String> =
                certs.iter().map(|(c, s)| format!("{} (slice {s})", c.derivation().label())).collect();
            let mut detail = format!("family {}", used.join(", "));
            if !skipped.is_empty() {
                detail.push_str(&format!("; without slice: {}", skipped.join(", ")));
            }
            Ok(match non_constant(&est) {
                None => Outcome::pass(format!("estimate = span{{1}}; {detail}")),
                Some(w) => Outcome::fail(format!("estimate has dim {}; {detail}", est.dim()), w),
            }
            .at(deg))
        }

        Claim::DistinctKernels { derivations, degree } => {
            let deg = degree_or(degree);
            let [a, b] = derivations.as_slice() else {
                return Err(err("distinct-kernels needs exactly two derivations"));
            };
            let (da, db) = (derivation(fx, a)?, derivation(fx, b)?);
            Ok(match kernels_distinct_bounded(da, db, deg, opts.limits).map_err(err)? {
                Distinctness::Distinct { witness, in_kernel_of } => {
                    let (zero, other) = if in_kernel_of == 0 { (da, db) } else { (db, da) };
                    let image = other.apply(&witness);
                    if zero.apply(&witness).is_zero() && !image.is_zero() {
                        Outcome::pass(format!("{}(w) = 0 but {}(w) = {image}", zero.label(), other.label()))
                            .witness(witness)
                    } else {
                        Outcome::fail("separating element failed verification", witness)
                    }
                }
                Distinctness::NotRefuted => Outcome::inconclusive(format!("kernels agree up to degree {deg}"), deg),
            }
            .at(deg))
        }

        Claim::NotWellDefined { images } => {
            let imgs = images_of(&fx.ring, images).map_err(err)?;
            Ok(match Derivation::new(&fx.ring, "candidate", imgs) {
                Err(Error::NotWellDefined { relation, residue }) if !residue.is_zero() => {
                    Outcome::pass(format!("rejected on relation {relation}")).witness(format!("residue {residue}"))
                }
                Err(e) => err(e),
                Ok(_) => Outcome::fail("images respect every relation", "no residue"),
            })
        }

        Claim::DixmierImage { derivation: name, r, element: f, expected, power } => {
            let d = derivation(fx, name)?;
            let cert = certificate(d, opts)?;
            let ring = d.ring();
            let (r_el, f_el) = (element(ring, r)?, element(ring, f)?);
            let t = d.apply(&r_el);
            let got = dixmier_apply(&cert, &r_el, &f_el).map_err(err)?;
            let got_loc = got.to_localized(&t).map_err(err)?;
            let want = LocalizedElement::new(element(ring, expected)?, t.clone(), *power).map_err(err)?;
            Ok(if got_loc.equals(&want).map_err(err)? {
                Outcome::pass(format!("= {got}"))
            } else {
                Outcome::fail(format!("expected {want}"), format!("pi_{r}({f}) = {got}"))
            })
        }
    }
}
