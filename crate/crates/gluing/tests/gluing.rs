use etcs_gluing::{
    derive_eps_minus, enumerate_gluings, enumerate_oriented_gluings, Condition, GluingData,
    GluingError, HElement, Matrix,
};
use etcs_ratarith::{rat, Rational};
use num_integer::Integer;
use proptest::prelude::*;

fn data(kp: i64, km: i64, ep: i64, em: i64, m: i64, p: i64, n: i64, q: i64) -> GluingData {
    GluingData::new(kp, km, ep, em, Matrix::new(m, p, n, q)).unwrap()
}

/// Every valid datum for orders up to 6, collected once.
fn all_data() -> Vec<GluingData> {
    let mut out = Vec::new();
    for kp in 1..=6 {
        for km in 1..=6 {
            out.extend(enumerate_oriented_gluings(kp, km));
        }
    }
    out
}

#[test]
fn validate_examples() {
    assert!(data(3, 5, 1, -1, 1, 1, 10, -5).is_valid());
    let bad = data(4, 4, 1, -1, 0, 4, 4, -8).validate();
    assert!(bad.violated.contains(&Condition::SignProduct));
    assert!(data(1, 1, 0, 0, 0, 1, 1, 0).is_valid());
    let incompatible = data(3, 3, 1, -1, 0, 3, 3, 0).validate();
    assert_eq!(incompatible.violated, vec![Condition::ResidueCompatibility]);
    assert_eq!(
        GluingData::new(0, 1, 0, 0, Matrix::new(0, 1, 1, 0)),
        Err(GluingError::NonPositiveOrder {
            k_plus: 0,
            k_minus: 1
        })
    );
}

#[test]
fn validate_reports_each_failed_condition() {
    let g = data(3, 5, 1, 2, 1, 1, 10, -5);
    let v = g.validate();
    assert!(v.violated.contains(&Condition::MinusCongruence));
    assert!(!v.violated.contains(&Condition::Determinant));
    let g = data(3, 5, 1, -1, 1, 1, 10, -4);
    assert!(g.validate().violated.contains(&Condition::Determinant));
}

#[test]
fn derive_examples() {
    assert_eq!(
        derive_eps_minus(3, 1, Matrix::new(1, 1, 10, -5)).unwrap(),
        (5, 4)
    );
    for k in 1..=6 {
        let (km, em) = derive_eps_minus(k, 1, Matrix::new(0, k, k, 0)).unwrap();
        assert_eq!(km, k);
        assert_eq!(em, 1 % k);
    }
    assert_eq!(
        derive_eps_minus(2, 1, Matrix::new(1, 1, 3, -1)).unwrap(),
        (2, 1)
    );
}

#[test]
fn derived_residue_satisfies_minus_congruence() {
    // Independent check: eps- is among the residues making the minus-side
    // congruence hold, found by brute force.
    for g in all_data() {
        let Matrix { m, p, n, q } = g.matrix;
        let hits: Vec<i64> = (0..g.k_minus)
            .filter(|e| (e * p + m) % g.k_minus == 0 && (e * q + n) % g.k_minus == 0)
            .collect();
        assert!(hits.contains(&g.eps_minus), "{g}");
    }
}

#[test]
fn geometry_examples() {
    let g = data(3, 5, 1, -1, 1, 1, 10, -5).geometry();
    assert_eq!(g.cos2_theta, rat(1, 3));
    assert_eq!(g.s_plus_sq, Some(rat(50, 1)));
    assert_eq!(g.s_minus_sq, Some(rat(2, 1)));
    assert!((g.theta - (1.0 / 3f64.sqrt()).acos()).abs() < 1e-14);

    let g = data(1, 2, 0, 1, 1, 1, 1, -1).geometry();
    assert!((g.theta - std::f64::consts::FRAC_PI_4).abs() < 1e-14);

    for k in 1..=6 {
        let d = data(k, k, 1, 1, 0, k, k, 0);
        let g = d.geometry();
        assert_eq!(g.cos2_theta, rat(0, 1));
        assert!(g.is_right_angle());
        assert_eq!(g.rho_over_pi, 0.0);
    }
}

#[test]
fn geometry_invariants_on_all_data() {
    for d in all_data() {
        let g = d.geometry();
        let Matrix { m, p, n, .. } = d.matrix;
        assert!(g.theta > 0.0 && g.theta < std::f64::consts::PI);
        let c = g.theta.cos();
        assert!((c * c - etcs_ratarith::to_f64(&g.cos2_theta)).abs() < 1e-12);
        if let (Some(sp), Some(sm)) = (&g.s_plus_sq, &g.s_minus_sq) {
            assert_eq!(
                sp.clone() * sm.clone(),
                Rational::new((n * n).into(), (p * p).into())
            );
            assert!(*sp > rat(0, 1) && *sm > rat(0, 1));
            // theta = arg(m s+ + i n)
            let s = g.s_plus().unwrap();
            assert!(((n as f64).atan2(m as f64 * s) - g.theta).abs() < 1e-12);
        }
    }
}

#[test]
fn fundamental_group_examples() {
    assert_eq!(data(3, 5, 1, -1, 1, 1, 10, -5).fundamental_group(), 1);
    assert_eq!(data(4, 6, 1, 1, 3, 21, 1, -1).fundamental_group(), 21);
    assert_eq!(data(3, 5, 1, 1, 1, 2, 5, -5).fundamental_group(), 2);
}

#[test]
fn remark_identities_on_all_data() {
    for d in all_data() {
        let Matrix { m, p, n, q } = d.matrix;
        let (kp, km) = (d.k_plus, d.k_minus);
        let (ep, em) = (d.eps_plus, d.eps_minus);
        let (eps, ems) = (d.eps_plus_inv(), d.eps_minus_inv());
        assert_eq!((n - ep * m + em * q - ep * em * p) % (kp * km), 0, "{d}");
        assert_eq!(
            (p - eps * q + ems * m - eps * ems * n) % (kp * km),
            0,
            "{d}"
        );
        let a = (m - eps * n) / kp;
        let b = (q + ems * n) / km;
        assert_eq!((m - eps * n) % kp, 0);
        assert_eq!((q + ems * n) % km, 0);
        assert_eq!((-a * b).mod_floor(&n), 1 % n, "{d}");
        let idx = m.gcd(&p).gcd(&kp);
        assert_eq!(n.gcd(&q).gcd(&kp), idx);
        assert_eq!(m.gcd(&n).gcd(&km), idx);
        assert_eq!(p.gcd(&q).gcd(&km), idx);
    }
}

#[test]
fn covering_examples() {
    let g = data(3, 5, -1, 1, 5, 10, 1, -1);
    assert!(g.is_valid());
    let c = g.covering(10).unwrap();
    assert_eq!(c, data(3, 1, -1, 0, 1, 1, 2, -1));
    assert!(c.is_valid());
    assert_eq!(g.covering(1).unwrap(), g);
    assert!(g.covering(3).is_err());
}

#[test]
fn covering_properties_on_all_data() {
    for d in all_data() {
        let p = d.matrix.p;
        let universal = d.covering(p).unwrap();
        assert!(universal.is_valid(), "{d} -> {universal}");
        assert_eq!(universal.fundamental_group(), 1);
        for l1 in 1..=p {
            if p % l1 != 0 {
                continue;
            }
            let c1 = d.covering(l1).unwrap();
            assert!(c1.is_valid());
            assert_eq!(c1.fundamental_group() as i64, p / l1);
            for l2 in 1..=p / l1 {
                if (p / l1) % l2 == 0 {
                    assert_eq!(c1.covering(l2).unwrap(), d.covering(l1 * l2).unwrap());
                }
            }
        }
    }
}

#[test]
fn orbit_examples() {
    let g = data(3, 5, 1, -1, 1, 1, 10, -5);
    let swapped = HElement {
        swap: true,
        ..Default::default()
    }
    .apply(&g);
    assert_eq!(swapped, data(5, 3, -1, 1, 5, 1, 10, -1));
    let flip = HElement {
        flip: true,
        ..Default::default()
    };
    assert_eq!(flip.apply(&flip.apply(&g)), g);
    let orbit = g.symmetry_orbit();
    assert_eq!(8 % orbit.len(), 0);
}

#[test]
fn group_structure_on_all_data() {
    for d in all_data() {
        let orbit = d.symmetry_orbit();
        assert_eq!(8 % orbit.len(), 0);
        for h in HElement::all() {
            let e = h.apply(&d);
            assert!(e.is_valid(), "{h:?} {d}");
            assert_eq!(h.apply(&e), d, "involution");
        }
        let n = d.normalize();
        assert_eq!(n.normalize(), n);
        for e in &orbit {
            if e.k_plus == d.k_plus && e.k_minus == d.k_minus {
                if d.k_plus == d.k_minus || !HElement::all().any(|h| h.swap && h.apply(&d) == *e) {
                    assert_eq!(e.normalize(), n, "normalize constant on orbit of {d}");
                }
            }
        }
    }
}

#[test]
fn normalize_examples() {
    let g = data(2, 2, 1, 1, -1, 1, 1, 3);
    assert!(g.is_valid());
    let n = g.normalize();
    assert_eq!(n.matrix, Matrix::new(1, 1, 1, -3));
    assert_eq!(n.normalize(), n);
    let r251 = data(5, 5, 1, 1, 0, 5, 5, 0);
    let r252 = data(5, 5, 2, 3, 0, 5, 5, 0);
    assert_eq!(r251.normalize().eps_plus, 1);
    assert_eq!(r252.normalize().eps_plus, 2);
    assert_eq!(data(5, 5, 4, 4, 0, 5, 5, 0).normalize(), r251);
    assert_eq!(data(5, 5, 3, 2, 0, 5, 5, 0).normalize(), r252);
}

#[test]
fn t_dual_examples() {
    let g = data(3, 5, 1, -1, 1, 1, 10, -5);
    let t = g.t_dual();
    assert_eq!(t, data(3, 5, -1, 1, 5, 10, 1, -1));
    assert_eq!(t.geometry().cos2_theta, g.geometry().cos2_theta);
    for k in 1..=6 {
        for e in 1..=k {
            if e.gcd(&k) != 1 {
                continue;
            }
            let d = data(
                k,
                k,
                e,
                etcs_ratarith::mod_inverse(&e, &k).unwrap(),
                0,
                k,
                k,
                0,
            );
            let composite = HElement {
                swap: true,
                flip: true,
                rotate: true,
            }
            .apply(&d);
            assert_eq!(d.t_dual(), composite);
        }
    }
}

#[test]
fn t_dual_properties_on_all_data() {
    for d in all_data() {
        let t = d.t_dual();
        assert!(t.is_valid(), "{d}");
        assert_eq!(t.geometry().cos2_theta, d.geometry().cos2_theta);
        assert!(d.symmetry_orbit().contains(&t.t_dual()));
    }
}

#[test]
fn quarter_turn_properties() {
    let mut group_sizes = Vec::new();
    for d in all_data() {
        if d.is_right_angle() {
            assert_eq!(d.quarter_turn(), Err(GluingError::RightAngle));
            continue;
        }
        let t = d.quarter_turn().unwrap().data;
        assert!(t.is_valid(), "{d} -> {t}");
        // Closure of {d} under H and the quarter turn.
        let mut seen = vec![d];
        let mut i = 0;
        while i < seen.len() {
            let cur = seen[i];
            let mut next: Vec<GluingData> = HElement::all().map(|h| h.apply(&cur)).collect();
            if let Ok(x) = cur.quarter_turn() {
                next.push(x.data);
            }
            for x in next {
                if !seen.contains(&x) {
                    seen.push(x);
                }
            }
            i += 1;
        }
        assert_eq!(32 % seen.len(), 0, "{d}");
        group_sizes.push(seen.len());
    }
    assert!(!group_sizes.is_empty());
    let g = data(1, 2, 0, 1, 1, 1, 1, -1);
    let t = g.quarter_turn().unwrap().data;
    assert_eq!(t.normalize(), g.normalize());
}

#[test]
fn enumerate_examples() {
    let one_two = enumerate_gluings(1, 2);
    assert_eq!(
        one_two.iter().map(|g| g.matrix).collect::<Vec<_>>(),
        vec![Matrix::new(1, 1, 1, -1)]
    );
    let two_two: Vec<Matrix> = enumerate_gluings(2, 2).iter().map(|g| g.matrix).collect();
    for m in [
        Matrix::new(1, 1, 1, -3),
        Matrix::new(1, 1, 3, -1),
        Matrix::new(0, 2, 2, 0),
        Matrix::new(1, 3, 1, -1),
    ] {
        assert!(two_two.contains(&m), "{m}");
    }
    let three_five = enumerate_gluings(3, 5);
    assert!(three_five.contains(&data(3, 5, 1, -1, 1, 1, 10, -5)));
    for k in 1..=6 {
        let list = enumerate_gluings(k, k);
        for e in 1..k.max(2) {
            if e.gcd(&k) != 1 {
                continue;
            }
            let inv = etcs_ratarith::mod_inverse(&e, &k).unwrap();
            let d = data(k, k, e, inv, 0, k, k, 0);
            assert!(list.contains(&d.normalize()), "k={k} e={e}");
        }
    }
}

#[test]
fn enumeration_swap_bijection() {
    let swap = HElement {
        swap: true,
        ..Default::default()
    };
    for kp in 1..=6 {
        for km in 1..=6 {
            let a = enumerate_gluings(kp, km);
            let b = enumerate_gluings(km, kp);
            assert_eq!(a.len(), b.len(), "({kp},{km})");
            for g in &a {
                assert!(b.contains(&swap.apply(g).normalize()), "{g}");
            }
        }
    }
}

#[test]
fn enumeration_is_exhaustive_against_brute_force() {
    // Independent oracle: scan all residues and all matrices in a box, keep
    // the valid sign-normalized ones.
    for (kp, km) in [(1, 2), (2, 2), (2, 3), (3, 3), (1, 4), (3, 5)] {
        let big = kp * km;
        let mut brute = Vec::new();
        for m in 0..=big {
            for p in 1..=big {
                for n in 1..=big {
                    for q in -big..=0 {
                        for ep in 0..kp {
                            for em in 0..km {
                                let g = data(kp, km, ep, em, m, p, n, q);
                                if g.is_valid() {
                                    brute.push(g);
                                }
                            }
                        }
                    }
                }
            }
        }
        brute.sort_by_key(|g| (g.matrix, g.eps_plus, g.eps_minus));
        let fast = enumerate_oriented_gluings(kp, km);
        assert_eq!(brute, fast, "({kp},{km})");
    }
}

proptest! {
    #[test]
    fn random_elements_preserve_validity(idx in 0usize..10_000, bits in 0u8..8) {
        let all = all_data();
        let d = all[idx % all.len()];
        let h = HElement { swap: bits & 1 != 0, flip: bits & 2 != 0, rotate: bits & 4 != 0 };
        let e = h.apply(&d);
        prop_assert!(e.is_valid());
        prop_assert_eq!(e.geometry().cos2_theta, d.geometry().cos2_theta);
    }
}
