mod common;

use common::{named_pairs, random_sequence, rng};
use horadam::catalog::{find, run_entry};
use horadam::dsl::{parse_identity, Expr, IdentityAst};
use horadam::kernel::{
    basis_coefficients, check_corollary, check_sum_binomial, check_sum_ordinary, evaluate_corollary, evaluate_theorem1,
    f_g, KernelArgs, ThreeTermRelation, Variant,
};
use horadam::{binom, make_sequence, mat_pow, GridSpec, Mat2, Named, Outcome, Rational, Sequence, VerificationCase};
use num_traits::{One, Signed};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, 1i64..=60).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn sequence() -> impl Strategy<Value = Sequence> {
    (nonzero_rational(), nonzero_rational(), rational(), rational())
        .prop_filter_map("initials not both zero", |(p, q, g0, g1)| {
            make_sequence(p, q, g0, g1).ok()
        })
}

fn canonical(r: &Rational) -> bool {
    use num_integer::Integer;
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one() && (!r.is_zero() || r.denom().is_one())
}

fn case(pairs: &[(&str, i64)]) -> VerificationCase {
    VerificationCase::from_pairs(pairs)
}

proptest! {
    #[test]
    fn rational_arithmetic_is_exact(x in rational(), y in rational()) {
        let sum = &x + &y;
        prop_assert!(canonical(&sum));
        prop_assert_eq!(&sum - &y, x.clone());
        let prod = &x * &y;
        prop_assert!(canonical(&prod));
        if !y.is_zero() {
            prop_assert_eq!(prod.checked_div(&y).unwrap(), x.clone());
        }
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }

    #[test]
    fn pascal(k in 2i64..200, j in 1i64..199) {
        prop_assume!(j < k);
        prop_assert_eq!(binom(k, j).unwrap(), binom(k - 1, j - 1).unwrap() + binom(k - 1, j).unwrap());
    }

    #[test]
    fn recurrence_holds_on_window(s in sequence()) {
        let (p, q) = (s.params().p().clone(), s.params().q().clone());
        let window = s.term_range(-52, 52).unwrap();
        for (i, n) in (-50i64..=50).enumerate() {
            let t = s.term(n);
            prop_assert_eq!(&t, &window[i + 2]);
            prop_assert_eq!(t, &p * &window[i + 1] + &q * &window[i]);
        }
    }

    #[test]
    fn oracle_agrees(s in sequence(), n in -60i64..=60) {
        prop_assert_eq!(s.term(n), s.term_iterative_oracle(n));
    }

    #[test]
    fn corollary_is_theorem1_specialized(
        pair in 0usize..3,
        n in -4i64..=4, m in -4i64..=4, a in -3i64..=3, b in -3i64..=3,
    ) {
        let (g, h) = &named_pairs()[pair];
        let cor = evaluate_corollary(g, h, &case(&[("n", n), ("m", m), ("a", a), ("b", b)])).unwrap();
        let thm = evaluate_theorem1(g, h, &case(&[("n", n), ("m", m), ("a", a), ("b", b), ("c", a), ("d", b)])).unwrap();
        let (Outcome::Checked { lhs: cl, rhs: cr }, Outcome::Checked { lhs: tl, rhs: tr }) = (&cor, &thm) else {
            return Err(TestCaseError::fail("both forms are always checked"));
        };
        prop_assert!(cl == cr && tl == tr);
        prop_assert!((tl, tr) == (cl, cr) || (tl, tr) == (&-cl, &-cr), "theorem {} {}, corollary {} {}", tl, tr, cl, cr);
    }

    #[test]
    fn basis_is_independent_of_the_pair(
        pair in 0usize..3,
        n in -4i64..=4, a in -3i64..=3, b in -3i64..=3,
        c1 in -3i64..=3, d1 in -3i64..=3, c2 in -3i64..=3, d2 in -3i64..=3,
    ) {
        let (g, h) = &named_pairs()[pair];
        let first = basis_coefficients(g, h, n, a, b, c1, d1, -6..=6);
        let second = basis_coefficients(g, h, n, a, b, c2, d2, -6..=6);
        if let (Ok((l1, l2)), Ok(other)) = (&first, &second) {
            prop_assert_eq!(&(l1.clone(), l2.clone()), other);
            for m in -6i64..=6 {
                prop_assert_eq!(h.term(n + m), l1 * &g.term(m - a) + l2 * &g.term(m - b));
            }
        }
    }

    #[test]
    fn catalog_master_agrees_with_corollary(
        family in 0usize..3,
        n in -3i64..=3, m in -3i64..=3, a in -3i64..=3, b in -3i64..=3,
    ) {
        let (prefix, named) = [("fib", Named::Fibonacci), ("pell", Named::Pell), ("jac", Named::Jacobsthal)][family];
        let grid = GridSpec::parse(&format!("n={n},m={m},a={a},b={b}")).unwrap();
        let rep = run_entry(find(&format!("{prefix}.master")).unwrap(), Some(&grid), None).unwrap();
        let seq = named.sequence();
        let kernel = check_corollary(&seq, &seq, &case(&[("n", n), ("m", m), ("a", a), ("b", b)])).unwrap();
        prop_assert_eq!(rep.holds(), kernel.holds());
        prop_assert!(rep.holds());
    }

    #[test]
    fn catalog_sums_agree_with_kernel(
        family in 0usize..3,
        v in 1u8..=3,
        binomial in any::<bool>(),
        n in -2i64..=2, m in -2i64..=2, a in -1i64..=2, b in -1i64..=2, c in -1i64..=2, d in -1i64..=2, k in 0i64..=4,
    ) {
        let (prefix, named) = [("fib", Named::Fibonacci), ("pell", Named::Pell), ("jac", Named::Jacobsthal)][family];
        let kind = if binomial { "binomial" } else { "ordinary" };
        let entry = find(&format!("{prefix}.sum.{kind}.{v}")).unwrap();
        let vars = entry.free_vars();
        let all = [("n", n), ("m", m), ("a", a), ("b", b), ("c", c), ("d", d), ("k", k)];
        let used: Vec<String> = all.iter().filter(|(x, _)| vars.contains(x)).map(|(x, val)| format!("{x}={val}")).collect();
        let grid = GridSpec::parse(&used.join(",")).unwrap();
        let rep = run_entry(entry, Some(&grid), None).unwrap();
        let seq = named.sequence();
        let variant = Variant::from_number(v).unwrap();
        let full = case(&all);
        let kernel = if binomial {
            check_sum_binomial(&seq, &seq, variant, &full)
        } else {
            check_sum_ordinary(&seq, &seq, variant, &full)
        }
        .unwrap();
        prop_assert!(rep.holds());
        prop_assert!(kernel.holds());
    }
}

#[test]
fn mat_pow_exponent_law() {
    let mut r = rng(5);
    for _ in 0..5 {
        let s = random_sequence(&mut r);
        let m = s.params().companion();
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                let lhs = mat_pow(&m, a + b).unwrap();
                let rhs = mat_pow(&m, a).unwrap().mul(&mat_pow(&m, b).unwrap());
                assert_eq!(lhs, rhs, "a={a} b={b}");
            }
        }
    }
    assert_eq!(mat_pow(&Mat2::identity(), -3).unwrap(), Mat2::identity());
}

#[test]
fn term_range_matches_term() {
    let mut r = rng(11);
    for _ in 0..10 {
        let s = random_sequence(&mut r);
        let range = s.term_range(-30, 30).unwrap();
        for (i, v) in range.iter().enumerate() {
            assert_eq!(v, &s.term(-30 + i as i64));
        }
    }
}

#[test]
fn kernel_symmetries() {
    let mut r = rng(3);
    let mut seqs: Vec<Sequence> = vec![
        Named::Fibonacci.sequence(),
        Named::PellLucas.sequence(),
        Named::Jacobsthal.sequence(),
    ];
    seqs.push(random_sequence(&mut r));
    for g in &seqs {
        let t = g.term_range(-8, 8).unwrap();
        for u in -4i64..=4 {
            for v in -4i64..=4 {
                for s in -4i64..=4 {
                    for w in -4i64..=4 {
                        let f = |u, v, s, t| f_g(g, KernelArgs::new(u, v, s, t));
                        let base = f(u, v, s, w);
                        assert_eq!(f(u, v, w, s), -base.clone());
                        assert_eq!(f(v, u, s, w), -base.clone());
                        assert_eq!(f(v, u, w, s), base);
                        assert!(f(u, u, s, w).is_zero());
                        assert!(f(u, v, s, s).is_zero());
                        let direct = &t[(u - s + 8) as usize] * &t[(v - w + 8) as usize]
                            - &t[(u - w + 8) as usize] * &t[(v - s + 8) as usize];
                        assert_eq!(f(u, v, s, w), direct);
                    }
                }
            }
        }
    }
}

#[test]
fn relation_rejects_bad_parameters() {
    assert!(ThreeTermRelation::new(Rational::zero(), Rational::one(), 1, 2).is_err());
    assert!(ThreeTermRelation::new(Rational::one(), Rational::zero(), 1, 2).is_err());
    assert!(ThreeTermRelation::new(Rational::one(), Rational::one(), 2, 2).is_err());
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..20).prop_map(Expr::Int),
        prop_oneof![Just("n"), Just("m"), Just("k")].prop_map(Expr::var),
    ]
}

/// Integer-valued expressions, used for indices, exponents and bounds.
fn index_expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Add(Box::new(l), Box::new(r))),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Sub(Box::new(l), Box::new(r))),
            (inner.clone(), inner).prop_map(|(l, r)| Expr::Mul(Box::new(l), Box::new(r))),
        ]
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let seq = prop_oneof![Just("F"), Just("L"), Just("j"), Just("pell-lucas")];
    let atom = prop_oneof![
        leaf(),
        (seq, index_expr()).prop_map(|(s, i)| Expr::Term {
            seq: s.to_string(),
            index: Box::new(i)
        }),
        index_expr().prop_map(|e| Expr::SignPow(Box::new(e))),
        (index_expr(), index_expr()).prop_map(|(k, j)| Expr::Binom(Box::new(k), Box::new(j))),
    ];
    atom.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Add(Box::new(l), Box::new(r))),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Sub(Box::new(l), Box::new(r))),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Mul(Box::new(l), Box::new(r))),
            (inner.clone(), index_expr()).prop_map(|(b, e)| Expr::Pow {
                base: Box::new(b),
                exp: Box::new(e)
            }),
            (index_expr(), inner).prop_map(|(hi, body)| Expr::Sum {
                var: "i".into(),
                lo: Box::new(Expr::Int(0)),
                hi: Box::new(hi),
                body: Box::new(body)
            }),
        ]
    })
}

fn has_nested_sum(e: &Expr, inside: bool) -> bool {
    let here = matches!(e, Expr::Sum { .. });
    (here && inside) || e.children().into_iter().any(|(c, _)| has_nested_sum(c, inside || here))
}

proptest! {
    #[test]
    fn dsl_print_parse_round_trip(lhs in expr(), rhs in expr()) {
        prop_assume!(!has_nested_sum(&lhs, false) && !has_nested_sum(&rhs, false));
        let text = format!("{lhs} = {rhs}");
        let ast: IdentityAst = parse_identity(&text).unwrap();
        prop_assert_eq!(&ast.lhs, &lhs);
        prop_assert_eq!(&ast.rhs, &rhs);
        prop_assert_eq!(parse_identity(&ast.to_string()).unwrap(), ast);
    }
}
