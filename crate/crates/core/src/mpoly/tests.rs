use super::*;
use proptest::prelude::*;

fn p(text: &str, nvars: usize) -> MultiPoly {
    parse(text, nvars).unwrap()
}

#[test]
fn parse_diagonal_quartic() {
    let f = p("X0^4+X1^4+X2^4+X3^4", 4);
    assert_eq!(f.num_terms(), 4);
    assert_eq!(f.homogeneous_degree(), Some(4));
}

#[test]
fn parse_expands_squares() {
    assert_eq!(p("(X0+X1)^2", 2), p("X0^2+2*X0*X1+X1^2", 2));
}

#[test]
fn parse_rank8_example_quartic() {
    let f = p("-X0^3*X2+X0*X1^2*X2-X1^4-X2^4", 3);
    assert_eq!(f.num_terms(), 4);
    assert_eq!(f.homogeneous_degree(), Some(4));
    // Leading (graded-lex) term is -X0^3*X2.
    let (m, c) = f.terms().next_back().unwrap();
    assert_eq!(m.exps(), &[3, 0, 1]);
    assert_eq!(c, &BigInt::from(-1));
}

#[test]
fn parse_errors_carry_positions() {
    match parse("X0^4+X5", 4) {
        Err(ParseError::UnknownVariable { index: 5, pos: 5, .. }) => {}
        other => panic!("unexpected: {other:?}"),
    }
    match parse("X0^X1", 2) {
        Err(ParseError::BadExponent { pos: 3 }) => {}
        other => panic!("unexpected: {other:?}"),
    }
    match parse("X0*", 2) {
        Err(ParseError::Syntax { .. }) => {}
        other => panic!("unexpected: {other:?}"),
    }
    match parse("2X0", 2) {
        Err(ParseError::Syntax { pos: 1, .. }) => {} // implicit multiplication rejected
        other => panic!("unexpected: {other:?}"),
    }
}

#[test]
fn mul_by_one_is_identity() {
    let f = p("-X0^3*X2+X0*X1^2*X2-X1^4-X2^4", 3);
    assert_eq!(f.mul(&MultiPoly::one(3)).unwrap(), f);
}

#[test]
fn discriminant_input_combination_expands_correctly() {
    // f2^2 - 4*f4 for the rank-8 example, against an independently entered
    // expansion of (X0^2-X0*X1-X0*X2-X1*X2)^2.
    let f2 = p("X0^2-X0*X1-X0*X2-X1*X2", 3);
    let f4 = p("-X0^3*X2+X0*X1^2*X2-X1^4-X2^4", 3);
    let lhs = f2.pow(2).sub(&f4.scale(&BigInt::from(4))).unwrap();
    let expansion = p(
        "X0^4-2*X0^3*X1-2*X0^3*X2+X0^2*X1^2+X0^2*X2^2
         +2*X0*X1^2*X2+2*X0*X1*X2^2+X1^2*X2^2
         +4*X0^3*X2-4*X0*X1^2*X2+4*X1^4+4*X2^4",
        3,
    );
    assert_eq!(lhs, expansion);
    assert_eq!(lhs.homogeneous_degree(), Some(4));
}

#[test]
fn partial_derivatives() {
    assert_eq!(
        p("X0^4", 3).partial_derivative(0).unwrap(),
        p("4*X0^3", 3)
    );
    assert_eq!(
        p("X0*X1^2*X2", 3).partial_derivative(1).unwrap(),
        p("2*X0*X1*X2", 3)
    );
    assert!(p("X0", 1).partial_derivative(3).is_err());
}

#[test]
fn homogeneity_detection() {
    assert_eq!(p("X0^2+X1^2", 2).homogeneous_degree(), Some(2));
    assert_eq!(p("X0^2+X1", 2).homogeneous_degree(), None);
    assert!(p("X0-X0", 2).is_zero());
}

#[test]
fn substitute_replaces_variable() {
    // X0^2 with X0 -> X1+1: (X1+1)^2.
    let f = p("X0^2", 2);
    let g = f.substitute(0, &p("X1+1", 2)).unwrap();
    assert_eq!(g, p("X1^2+2*X1+1", 2));
}

#[test]
fn display_round_trips_and_hash_is_stable() {
    let f = p("-X0^3*X2+X0*X1^2*X2-X1^4-X2^4", 3);
    let reparsed = parse(&f.to_string(), 3).unwrap();
    assert_eq!(f, reparsed);
    assert_eq!(f.canonical_hash(), reparsed.canonical_hash());
    // Canonical bytes are explicit about every exponent.
    let bytes = String::from_utf8(p("2*X0", 2).canonical_bytes()).unwrap();
    assert_eq!(bytes, "v1|nvars=2|2:1,0");
}

#[test]
fn zero_displays_and_parses() {
    let z = MultiPoly::zero(3);
    assert_eq!(z.to_string(), "0");
    assert_eq!(parse("0", 3).unwrap(), z);
}

fn arb_poly(nvars: usize, max_deg: u16, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(
        (
            proptest::collection::vec(0..=max_deg, nvars),
            -6i64..=6,
        ),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        MultiPoly::from_terms(
            nvars,
            terms
                .into_iter()
                .map(|(e, c)| (e, BigInt::from(c))),
        )
    })
}

fn arb_homogeneous(nvars: usize, deg: u16, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(
        (proptest::collection::vec(0..=deg, nvars - 1), 1i64..=6),
        1..=max_terms,
    )
    .prop_map(move |terms| {
        MultiPoly::from_terms(
            nvars,
            terms.into_iter().filter_map(|(mut e, c)| {
                let partial: u32 = e.iter().map(|&x| x as u32).sum();
                if partial > deg as u32 {
                    return None;
                }
                e.push((deg as u32 - partial) as u16);
                Some((e, BigInt::from(c)))
            }),
        )
    })
}

proptest! {
    #[test]
    fn ring_axioms(
        a in arb_poly(3, 3, 5),
        b in arb_poly(3, 3, 5),
        c in arb_poly(3, 3, 5),
    ) {
        // (a+b)+c = a+(b+c)
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        // (ab)c = a(bc)
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        // a(b+c) = ab+ac
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        // ab = ba
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn display_parse_round_trip(a in arb_poly(4, 5, 8)) {
        let text = a.to_string();
        let back = parse(&text, 4).unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn euler_identity_for_homogeneous_forms(f in arb_homogeneous(3, 4, 6)) {
        prop_assume!(!f.is_zero());
        let d = f.homogeneous_degree().unwrap();
        let mut acc = MultiPoly::zero(3);
        for v in 0..3 {
            let x = MultiPoly::var(3, v).unwrap();
            acc = acc.add(&x.mul(&f.partial_derivative(v).unwrap()).unwrap()).unwrap();
        }
        prop_assert_eq!(acc, f.scale(&BigInt::from(d)));
    }

    #[test]
    fn multiplication_adds_degrees(
        f in arb_homogeneous(3, 3, 4),
        g in arb_homogeneous(3, 5, 4),
    ) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = f.mul(&g).unwrap();
        prop_assert!(!fg.is_zero());
        prop_assert_eq!(
            fg.homogeneous_degree(),
            Some(f.homogeneous_degree().unwrap() + g.homogeneous_degree().unwrap())
        );
    }
}
