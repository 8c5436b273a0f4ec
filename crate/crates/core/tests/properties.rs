//! Randomised checks of the algebraic laws every module is meant to satisfy.

mod common;

use std::sync::LazyLock;

use lnd_core::dixmier::{dixmier_apply, DixmierImage};
use lnd_core::groebner::{groebner_basis, normal_form, s_polynomial};
use lnd_core::invariant::{intersect_spans, kernel_basis_bounded, ml_star_estimate_bounded};
use lnd_core::{
    parse_expression, BigRational, Derivation, Limits, LocalizedElement, Monomial, Polynomial, Ring, RingElement,
    TermOrder, VarContext,
};
use proptest::prelude::*;

const CASES: u32 = 256;

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn arb_poly(ctx: VarContext, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = ctx.len();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), arb_rational()), 0..=max_terms).prop_map(
        move |terms| {
            Polynomial::from_terms(
                &ctx,
                terms.into_iter().map(|(mut e, c)| {
                    // trim the largest exponent until the degree fits
                    while e.iter().sum::<u32>() > max_deg {
                        let i = (0..e.len()).max_by_key(|&i| e[i]).unwrap();
                        e[i] -= 1;
                    }
                    (Monomial::from_exponents(e), c)
                }),
            )
        },
    )
}

fn arb_elem(ring: &Ring, max_deg: u32) -> impl Strategy<Value = RingElement> {
    let r = ring.clone();
    arb_poly(ring.context().clone(), max_deg, 5).prop_map(move |p| r.element(&p).unwrap())
}

static CYLINDER: LazyLock<(Ring, Derivation, Derivation)> = LazyLock::new(common::cylinder);
static THREEFOLD: LazyLock<(Ring, Vec<Derivation>)> = LazyLock::new(common::threefold);
static TOWER: LazyLock<(Ring, Derivation, Derivation)> = LazyLock::new(common::tower);

/// Every fixture derivation, for laws that should hold for all of them.
fn all_derivations() -> Vec<Derivation> {
    let mut v = vec![CYLINDER.1.clone(), CYLINDER.2.clone(), TOWER.1.clone(), TOWER.2.clone()];
    v.extend(THREEFOLD.1.iter().cloned());
    v.push(common::danielewski().1);
    v
}

static DERIVATIONS: LazyLock<Vec<Derivation>> = LazyLock::new(all_derivations);

fn arb_derivation_and_elems(k: usize, max_deg: u32) -> impl Strategy<Value = (Derivation, Vec<RingElement>)> {
    (0..DERIVATIONS.len()).prop_flat_map(move |i| {
        let d = DERIVATIONS[i].clone();
        prop::collection::vec(arb_elem(d.ring(), max_deg), k).prop_map(move |es| (d.clone(), es))
    })
}

mod arithmetic {
    use super::*;

    fn ctx3() -> VarContext {
        VarContext::new(&["X", "Y", "Z"]).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(CASES))]

        #[test]
        fn ring_axioms(a in arb_poly(ctx3(), 3, 4), b in arb_poly(ctx3(), 3, 4), c in arb_poly(ctx3(), 3, 4)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a * &Polynomial::one(&ctx3()), a.clone());
        }

        #[test]
        fn element_arithmetic_matches_reduced_polynomial_arithmetic(
            a in arb_poly(CYLINDER.0.context().clone(), 3, 5),
            b in arb_poly(CYLINDER.0.context().clone(), 3, 5),
        ) {
            let ring = &CYLINDER.0;
            let (ea, eb) = (ring.element(&a).unwrap(), ring.element(&b).unwrap());
            prop_assert_eq!(&ea * &eb, ring.element(&(&a * &b)).unwrap());
            prop_assert_eq!(&ea + &eb, ring.element(&(&a + &b)).unwrap());
        }

        #[test]
        fn localization_embedding_is_a_homomorphism(a in arb_elem(&THREEFOLD.0, 3), b in arb_elem(&THREEFOLD.0, 3)) {
            let t = THREEFOLD.0.var("X").unwrap();
            let emb = |e: &RingElement| LocalizedElement::from_element(e.clone(), t.clone()).unwrap();
            prop_assert!(emb(&(&a + &b)).equals(&emb(&a).checked_add(&emb(&b)).unwrap()).unwrap());
            prop_assert!(emb(&(&a * &b)).equals(&emb(&a).checked_mul(&emb(&b)).unwrap()).unwrap());
            prop_assert!(emb(&THREEFOLD.0.one()).equals(&LocalizedElement::new(t.clone(), t.clone(), 1).unwrap()).unwrap());
        }
    }
}

mod normal_forms {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(CASES))]

        #[test]
        fn linear_idempotent_and_kills_the_ideal(
            f in arb_poly(TOWER.0.context().clone(), 4, 5),
            g in arb_poly(TOWER.0.context().clone(), 4, 5),
            q in arb_poly(TOWER.0.context().clone(), 2, 3),
            c in arb_rational(),
        ) {
            let ring = &TOWER.0;
            let nf = |p: &Polynomial| ring.normal_form(p);
            prop_assert_eq!(nf(&(&f + &g)), &nf(&f) + &nf(&g));
            prop_assert_eq!(nf(&f.scale(&c)), nf(&f).scale(&c));
            prop_assert_eq!(nf(&nf(&f)), nf(&f));
            for r in ring.relations() {
                prop_assert!(nf(&(&q * r)).is_zero());
            }
            prop_assert_eq!(nf(&f), normal_form(&f, ring.groebner(), ring.order()));
        }

        #[test]
        fn buchberger_output_is_a_reduced_basis(
            a in arb_poly(VarContext::new(&["X", "Y", "Z"]).unwrap(), 2, 3),
            b in arb_poly(VarContext::new(&["X", "Y", "Z"]).unwrap(), 2, 3),
        ) {
            let order = TermOrder::grevlex(3);
            let rels: Vec<Polynomial> = [a, b].into_iter().filter(|p| !p.is_zero()).collect();
            let g = groebner_basis(&rels, &order).unwrap();
            for x in &g {
                for y in &g {
                    prop_assert!(normal_form(&s_polynomial(x, y, &order), &g, &order).is_zero());
                }
                prop_assert!(x.leading_term(&order).unwrap().1 == &BigRational::from_integer(1.into()));
            }
            for r in &rels {
                prop_assert!(normal_form(r, &g, &order).is_zero());
            }
            prop_assert_eq!(groebner_basis(&g, &order).unwrap(), g);
        }
    }
}

mod derivations {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(CASES))]

        #[test]
        fn leibniz_and_linearity(
            (d, es) in arb_derivation_and_elems(2, 3),
            a in arb_rational(),
            b in arb_rational(),
        ) {
            let (f, g) = (&es[0], &es[1]);
            prop_assert_eq!(d.apply(&(f * g)), &(f * &d.apply(g)) + &(g * &d.apply(f)));
            let lhs = d.apply(&(&f.scale(&a) + &g.scale(&b)));
            prop_assert_eq!(lhs, &d.apply(f).scale(&a) + &d.apply(g).scale(&b));
        }

        #[test]
        fn independent_of_representative(
            i in 0..DERIVATIONS.len(),
            p in arb_poly(VarContext::new(&["X", "Y", "Z", "T"]).unwrap(), 3, 4),
            q in arb_poly(VarContext::new(&["X", "Y", "Z", "T"]).unwrap(), 2, 3),
        ) {
            let d = &DERIVATIONS[i];
            let ring = d.ring();
            let ctx = ring.context();
            // restrict the random data to variables the ring has
            let (Ok(p), Ok(q)) = (p.embed(ctx), q.embed(ctx)) else { return Ok(()); };
            for r in ring.relations() {
                let shifted = &p + &(&q * r);
                prop_assert_eq!(
                    d.apply_representative(&shifted).unwrap(),
                    d.apply(&ring.element(&p).unwrap())
                );
            }
        }

        #[test]
        fn kernels_are_inert(
            i in 0..2usize,
            f in arb_elem(&THREEFOLD.0, 3),
            g in arb_elem(&THREEFOLD.0, 3),
        ) {
            // both rings are domains; D(f) != 0 and g != 0 force D(fg) != 0
            let d = &THREEFOLD.1[i];
            let df = d.apply(&f);
            prop_assume!(!df.is_zero() && !g.is_zero());
            prop_assert!(!d.apply(&(&f * &g)).is_zero());
            let (b51, d51) = (&CYLINDER.0, &CYLINDER.1);
            let f = b51.element(f.repr()).unwrap();
            let g = b51.element(g.repr()).unwrap();
            if !d51.apply(&f).is_zero() && !g.is_zero() {
                prop_assert!(!d51.apply(&(&f * &g)).is_zero());
            }
        }

        #[test]
        fn nilpotency_within_product_bound((d, es) in arb_derivation_and_elems(1, 3)) {
            let cert = d.certify(64);
            prop_assert!(cert.is_certified());
            let f = &es[0];
            let bound = cert.index_bound_for_degree(f.degree().unwrap_or(0));
            let m = d.nilpotency_index(f, bound).index();
            prop_assert!(m.is_some(), "{} not nilpotent within {}", f, bound);
            let m = m.unwrap();
            prop_assert!(d.apply_n(f, m).is_zero());
            if m > 1 {
                prop_assert!(!d.apply_n(f, m - 1).is_zero());
            }
        }
    }

    #[test]
    fn certificates_are_sound() {
        for d in DERIVATIONS.iter() {
            let cert = d.certify(64);
            assert!(cert.is_certified(), "{d}");
            for (name, idx) in cert.per_generator_index() {
                let v = d.ring().var(name).unwrap();
                let m = idx.index().unwrap();
                assert!(d.apply_n(&v, m).is_zero());
                if m > 1 {
                    assert!(!d.apply_n(&v, m - 1).is_zero());
                }
            }
        }
    }
}

mod dixmier {
    use super::*;

    fn localized(img: DixmierImage, t: &RingElement) -> LocalizedElement {
        img.to_localized(t).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(CASES))]

        #[test]
        fn slice_map_is_a_homomorphism_onto_the_kernel(f in arb_elem(&CYLINDER.0, 3), g in arb_elem(&CYLINDER.0, 3)) {
            let (b, d1, _) = &*CYLINDER;
            let cert = d1.certify(64);
            let s = b.var("T").unwrap();
            let pi = |e: &RingElement| dixmier_apply(&cert, &s, e).unwrap().as_element().unwrap().clone();
            prop_assert_eq!(pi(&(&f + &g)), &pi(&f) + &pi(&g));
            prop_assert_eq!(pi(&(&f * &g)), &pi(&f) * &pi(&g));
            prop_assert!(d1.apply(&pi(&f)).is_zero());
            prop_assert!(pi(&(&s * &f)).is_zero());
            // elements of the kernel are fixed
            let k = pi(&f);
            prop_assert_eq!(pi(&k), k);
        }

        #[test]
        fn local_slice_map_is_a_homomorphism_into_the_kernel(f in arb_elem(&THREEFOLD.0, 2), g in arb_elem(&THREEFOLD.0, 2)) {
            let (b, ds) = &*THREEFOLD;
            let d2 = &ds[1];
            let cert = d2.certify(64);
            let r = b.var("Z").unwrap();
            let t = d2.apply(&r);
            let pi = |e: &RingElement| localized(dixmier_apply(&cert, &r, e).unwrap(), &t);
            prop_assert!(pi(&(&f + &g)).equals(&pi(&f).checked_add(&pi(&g)).unwrap()).unwrap());
            prop_assert!(pi(&(&f * &g)).equals(&pi(&f).checked_mul(&pi(&g)).unwrap()).unwrap());
            prop_assert!(d2.apply_localized(&pi(&f)).unwrap().is_zero());
        }

        #[test]
        fn local_slice_map_fixes_the_kernel(
            coeffs in prop::collection::vec(arb_rational(), 10),
        ) {
            // ker D2 = Q[x, t]; build a random element of degree <= 3 from it
            let (b, ds) = &*THREEFOLD;
            let d2 = &ds[1];
            let cert = d2.certify(64);
            let mons = ["1", "X", "T", "X^2", "X*T", "T^2", "X^3", "X^2*T", "X*T^2", "T^3"];
            let mut f = b.zero();
            for (c, m) in coeffs.iter().zip(mons) {
                f = &f + &b.parse_element(m).unwrap().scale(c);
            }
            prop_assert!(d2.apply(&f).is_zero());
            let r = b.var("Z").unwrap();
            let t = d2.apply(&r);
            let img = localized(dixmier_apply(&cert, &r, &f).unwrap(), &t);
            prop_assert!(img.equals(&LocalizedElement::from_element(f.clone(), t.clone()).unwrap()).unwrap());
        }
    }
}

mod spans {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(CASES))]

        #[test]
        fn kernel_bases_are_monotone_and_annihilated(i in 0..DERIVATIONS.len(), d in 0u32..=2) {
            let der = &DERIVATIONS[i];
            let lim = Limits::default();
            let low = kernel_basis_bounded(der, d, lim).unwrap();
            let high = kernel_basis_bounded(der, d + 1, lim).unwrap();
            for e in low.elements() {
                prop_assert!(der.apply(&e).is_zero());
                prop_assert!(high.contains(&e).unwrap());
            }
            prop_assert!(low.lift(d + 1, lim).unwrap().is_subspace_of(&high).unwrap());
        }

        #[test]
        fn intersections_shrink(mask in 1u32..16, extra in 0usize..4, d in 1u32..=3) {
            let (_, ds) = &*THREEFOLD;
            let lim = Limits::default();
            let kernels: Vec<_> = ds.iter().map(|x| kernel_basis_bounded(x, d, lim).unwrap()).collect();
            let chosen: Vec<&_> = (0..4).filter(|k| mask & (1 << k) != 0).map(|k| &kernels[k]).collect();
            let meet = intersect_spans(&chosen).unwrap();
            for k in &chosen {
                prop_assert!(meet.is_subspace_of(k).unwrap());
            }
            let mut more = chosen.clone();
            more.push(&kernels[extra]);
            prop_assert!(intersect_spans(&more).unwrap().is_subspace_of(&meet).unwrap());
        }

        #[test]
        fn random_members_of_a_kernel_span(i in 0..DERIVATIONS.len(), coeffs in prop::collection::vec(arb_rational(), 40)) {
            let der = &DERIVATIONS[i];
            let k = kernel_basis_bounded(der, 2, Limits::default()).unwrap();
            let mut f = der.ring().zero();
            for (c, e) in coeffs.iter().zip(k.elements()) {
                f = &f + &e.scale(c);
            }
            prop_assert!(k.contains(&f).unwrap());
            prop_assert!(der.apply(&f).is_zero());
        }
    }

    #[test]
    fn adding_derivations_shrinks_the_estimate() {
        let (b, d1, d2) = &*CYLINDER;
        let s = b.var("T").unwrap();
        let (c1, c2) = (d1.certify(64), d2.certify(64));
        let lim = Limits::default();
        for d in 0..=3 {
            let one = ml_star_estimate_bounded(&[(&c1, &s)], d, lim).unwrap();
            let both = ml_star_estimate_bounded(&[(&c1, &s), (&c2, &s)], d, lim).unwrap();
            assert!(both.is_subspace_of(&one).unwrap());
            assert!(one.same_span(&kernel_basis_bounded(d1, d, lim).unwrap()).unwrap());
        }
    }
}

mod parser {
    use super::*;

    fn ctx() -> VarContext {
        VarContext::new(&["X", "Y", "Z", "T"]).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(CASES))]

        #[test]
        fn print_then_parse_round_trips(p in arb_poly(ctx(), 4, 6)) {
            let c = ctx();
            prop_assert_eq!(parse_expression(&p.to_string(), &c).unwrap(), p.clone());
            let lex = TermOrder::lex(4);
            prop_assert_eq!(parse_expression(&p.display_with(&lex).to_string(), &c).unwrap(), p);
        }
    }
}
