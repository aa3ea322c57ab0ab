use muh_core::fourier::{big_f_of, big_g_of, big_g_of_matrix, window};
use muh_core::{prime_complete_system, Value};
use muh_lp::problem::{Objective, Variable};
use muh_lp::{
    solve, solve_with, verify_certificate, CertStatus, LpCertificate, LpError, LpMode, LpProblem,
    Relation, Row, Sense, VarKind, WarmStart,
};
use proptest::prelude::*;
use rug::Rational;
use std::cmp::Ordering;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Orbit sums of the fixture's values, with orbit sizes, indexed like the variables.
fn orbit_sums(p: &LpProblem, value: impl Fn(VarKind, &[i64]) -> Value) -> Vec<(Value, i64)> {
    let mut out: Vec<Option<(Value, i64)>> = vec![None; p.num_vars()];
    for v in window(p.dim, p.radius) {
        for kind in [VarKind::F, VarKind::G] {
            if p.mode == LpMode::GOnly && kind == VarKind::F {
                continue;
            }
            let j = p.var_index(kind, &v).unwrap();
            let x = value(kind, &v);
            out[j] = Some(match out[j].take() {
                None => (x, 1),
                Some((s, k)) => (s.add(&x), k + 1),
            });
        }
    }
    out.into_iter().map(Option::unwrap).collect()
}

/// Checks every row and bound at the orbit-averaged fixture values.
fn assert_averaged_feasible(p: &LpProblem, sums: &[(Value, i64)]) {
    let l = sums.iter().fold(1, |acc, &(_, k)| acc / gcd(acc, k) * k);
    let scaled: Vec<Value> = sums.iter().map(|(s, k)| s.scale(l / k)).collect();
    for (i, row) in p.rows.iter().enumerate() {
        let mut act = scaled[0].zero_like();
        for &(j, a) in &row.coeffs {
            act = act.add(&scaled[j].scale(a));
        }
        let diff = act.sub(&act.int_like(row.rhs * l));
        let sign = diff.real_sign(1e-9);
        let ok = match row.relation {
            Relation::Eq => sign == Ordering::Equal,
            Relation::Le => sign != Ordering::Greater,
            Relation::Ge => sign != Ordering::Less,
        };
        assert!(ok, "row {i} fails at the averaged fixture");
    }
    for (j, v) in scaled.iter().enumerate() {
        assert_ne!(v.real_sign(1e-9), Ordering::Less);
        assert_ne!(
            v.sub(&v.int_like(p.upper[j] * l)).real_sign(1e-9),
            Ordering::Greater
        );
    }
}

#[test]
fn averaged_prime_fixtures_are_feasible() {
    for (d, r) in [(2usize, 4i64), (3, 3), (5, 2)] {
        let s = prime_complete_system(d).unwrap();
        let full = LpProblem::build_full(d, r).unwrap();
        let sums = orbit_sums(&full, |kind, v| match kind {
            VarKind::F => big_f_of(&s, v).unwrap(),
            VarKind::G => big_g_of(&s, v).unwrap(),
        });
        assert_averaged_feasible(&full, &sums);
        // The target orbit is symmetric: its average is the attained value.
        if r >= d as i64 {
            let (sum, k) = &sums[full.objective.var];
            let d4 = (d as i64).pow(4);
            assert!(sum.sub(&sum.int_like(d4 * k)).is_zero(1e-9));
        }

        let h = s.matrix(0);
        let g = LpProblem::build_g_only(d, r).unwrap();
        let sums = orbit_sums(&g, |_, v| big_g_of_matrix(h, v).unwrap());
        assert_averaged_feasible(&g, &sums);
    }
}

#[test]
fn minimum_is_nondecreasing_in_radius() {
    let mut last = Rational::from(-1);
    for r in 3..=5 {
        let p = LpProblem::build_full(3, r).unwrap();
        let v = solve(&p).unwrap().optimum.unwrap();
        assert!(v >= last, "R={r}");
        last = v;
    }
    let mut last = Rational::from(-1);
    for r in 4..=6 {
        let p = LpProblem::build_g_only(4, r).unwrap();
        let v = solve(&p).unwrap().optimum.unwrap();
        assert!(v >= last, "R={r}");
        last = v;
    }
}

fn solved(d: usize, r: i64) -> (LpProblem, LpCertificate) {
    let p = LpProblem::build_full(d, r).unwrap();
    let c = solve(&p).unwrap();
    verify_certificate(&p, &c).unwrap();
    (p, c)
}

#[test]
fn perturbed_multiplier_is_rejected() {
    let (p, c) = solved(3, 3);
    let i = c.dual.iter().position(|y| *y != 0).unwrap();
    let mut bad = c.clone();
    bad.dual[i] += 1;
    assert!(verify_certificate(&p, &bad).is_err());
    let mut bad = c.clone();
    bad.dual[i] -= 1;
    assert!(verify_certificate(&p, &bad).is_err());
}

#[test]
fn perturbed_primal_reports_a_row() {
    let (p, c) = solved(3, 3);
    let mut bad = c.clone();
    let j = (0..p.num_vars()).find(|&j| bad.primal[j] > 0).unwrap();
    bad.primal[j] -= Rational::from((1, 2));
    let err = verify_certificate(&p, &bad).unwrap_err();
    assert!(err.row.is_some(), "{err}");
}

#[test]
fn wrong_sign_multiplier_reports_its_row() {
    let (p, c) = solved(3, 3);
    let i = p
        .rows
        .iter()
        .position(|r| r.relation == Relation::Le)
        .unwrap();
    let mut bad = c.clone();
    bad.dual[i] = Rational::from(1);
    assert_eq!(verify_certificate(&p, &bad).unwrap_err().row, Some(i));
}

#[test]
fn transplanted_certificate_is_rejected() {
    let (_, c) = solved(3, 3);
    let q = LpProblem::build_full(3, 4).unwrap();
    assert!(verify_certificate(&q, &c).is_err());
    let mut relabelled = c.clone();
    relabelled.radius = 4;
    assert!(verify_certificate(&q, &relabelled).is_err());
}

#[test]
fn certificate_json_round_trip() {
    let (p, c) = solved(2, 4);
    let text = c.to_json().unwrap();
    assert!(text.contains("\"16/1\""));
    let back = LpCertificate::from_json(&text).unwrap();
    assert_eq!(back, c);
    verify_certificate(&p, &back).unwrap();
}

#[test]
fn solves_are_reproducible_across_threads() {
    let p = LpProblem::build_full(4, 4).unwrap();
    let reference = solve(&p).unwrap().to_json().unwrap();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let p = p.clone();
            std::thread::spawn(move || solve(&p).unwrap().to_json().unwrap())
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), reference);
    }
}

fn custom(nvars: usize, rows: Vec<Row>, upper: Vec<i64>, sense: Sense, var: usize) -> LpProblem {
    LpProblem {
        dim: 1,
        radius: 0,
        mode: LpMode::Full,
        vars: (0..nvars)
            .map(|i| Variable {
                kind: VarKind::G,
                representative: vec![i as i64],
            })
            .collect(),
        rows,
        lower: vec![0; nvars],
        upper,
        objective: Objective { sense, var },
    }
}

#[test]
fn single_variable_program() {
    for d in [2i64, 3, 6] {
        let d3 = d.pow(3);
        for sense in [Sense::Min, Sense::Max] {
            let p = custom(
                1,
                vec![Row::new(vec![(0, 1)], Relation::Eq, d3)],
                vec![d3],
                sense,
                0,
            );
            for warm in [WarmStart::Highs, WarmStart::None] {
                let (c, _) = solve_with(&p, warm).unwrap();
                assert_eq!(c.optimum, Some(Rational::from(d3)));
                verify_certificate(&p, &c).unwrap();
            }
        }
    }
}

#[test]
fn infeasibility_comes_with_a_checked_certificate() {
    let p = custom(
        2,
        vec![
            Row::new(vec![(0, 1), (1, 1)], Relation::Ge, 7),
            Row::new(vec![(0, 2), (1, -1)], Relation::Eq, 0),
        ],
        vec![2, 3],
        Sense::Min,
        0,
    );
    for warm in [WarmStart::Highs, WarmStart::None] {
        let Err(LpError::Infeasible(cert)) = solve_with(&p, warm) else {
            panic!("expected infeasible");
        };
        assert_eq!(cert.status, CertStatus::Infeasible);
        verify_certificate(&p, &cert).unwrap();
        let mut zero = (*cert).clone();
        zero.dual.iter_mut().for_each(|y| *y = Rational::new());
        assert!(verify_certificate(&p, &zero).is_err());
    }
}

/// Vertex enumeration: the optimum over all basic solutions of the bounded program.
fn vertex_optimum(p: &LpProblem) -> Option<Rational> {
    let n = p.num_vars();
    // Hyperplanes: rows as equalities, then each variable at each bound.
    let mut planes: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for row in &p.rows {
        let mut a = vec![Rational::new(); n];
        for &(j, c) in &row.coeffs {
            a[j] = Rational::from(c);
        }
        planes.push((a, Rational::from(row.rhs)));
    }
    for j in 0..n {
        for b in [p.lower[j], p.upper[j]] {
            let mut a = vec![Rational::new(); n];
            a[j] = Rational::from(1);
            planes.push((a, Rational::from(b)));
        }
    }
    let feasible = |x: &[Rational]| {
        (0..n).all(|j| x[j] >= p.lower[j] && x[j] <= p.upper[j])
            && p.rows.iter().all(|row| {
                let act: Rational = row
                    .coeffs
                    .iter()
                    .map(|&(j, c)| Rational::from(c) * &x[j])
                    .sum();
                match row.relation {
                    Relation::Eq => act == row.rhs,
                    Relation::Le => act <= row.rhs,
                    Relation::Ge => act >= row.rhs,
                }
            })
    };
    let mut best: Option<Rational> = None;
    let mut pick = vec![0usize; n];
    fn next(pick: &mut [usize], m: usize) -> bool {
        let n = pick.len();
        for i in (0..n).rev() {
            if pick[i] < m - n + i {
                pick[i] += 1;
                for k in i + 1..n {
                    pick[k] = pick[k - 1] + 1;
                }
                return true;
            }
        }
        false
    }
    for (i, v) in pick.iter_mut().enumerate() {
        *v = i;
    }
    loop {
        if let Some(x) = solve_dense(&pick.iter().map(|&i| planes[i].clone()).collect::<Vec<_>>()) {
            if feasible(&x) {
                let v = x[p.objective.var].clone();
                let better = match (&best, p.objective.sense) {
                    (None, _) => true,
                    (Some(b), Sense::Min) => v < *b,
                    (Some(b), Sense::Max) => v > *b,
                };
                if better {
                    best = Some(v);
                }
            }
        }
        if !next(&mut pick, planes.len()) {
            return best;
        }
    }
}

fn solve_dense(eqs: &[(Vec<Rational>, Rational)]) -> Option<Vec<Rational>> {
    let n = eqs.len();
    let mut a: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(c, piv);
        for r in 0..n {
            if r != c && a[r][c] != 0 {
                let f = Rational::from(&a[r][c] / &a[c][c]);
                for k in c..=n {
                    let t = Rational::from(&f * &a[c][k]);
                    a[r][k] -= t;
                }
            }
        }
    }
    Some(
        (0..n)
            .map(|i| Rational::from(&a[i][n] / &a[i][i]))
            .collect(),
    )
}

fn arb_program() -> impl Strategy<Value = LpProblem> {
    (2usize..=3, 1usize..=3).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(1i64..=5, n),
            prop::collection::vec((prop::collection::vec(-3i64..=3, n), 0u8..3, -4i64..=10), m),
            any::<bool>(),
            0..n,
        )
            .prop_map(move |(upper, rows, max, var)| {
                let rows = rows
                    .into_iter()
                    .map(|(c, rel, rhs)| {
                        let rel = [Relation::Eq, Relation::Le, Relation::Ge][rel as usize];
                        Row::new(c.into_iter().enumerate().collect(), rel, rhs)
                    })
                    .filter(|r| !r.coeffs.is_empty())
                    .collect();
                let sense = if max { Sense::Max } else { Sense::Min };
                custom(n, rows, upper, sense, var)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_simplex_matches_vertex_enumeration(p in arb_program()) {
        let oracle = vertex_optimum(&p);
        for warm in [WarmStart::None, WarmStart::Highs] {
            match solve_with(&p, warm) {
                Ok((c, _)) => {
                    prop_assert!(verify_certificate(&p, &c).is_ok());
                    prop_assert_eq!(c.optimum.clone(), oracle.clone());
                }
                Err(LpError::Infeasible(c)) => {
                    prop_assert!(verify_certificate(&p, &c).is_ok());
                    prop_assert!(oracle.is_none());
                }
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
