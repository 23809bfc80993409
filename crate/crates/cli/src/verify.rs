//! Verification suites run by `etcs verify`.

use std::f64::consts::PI;
use std::io::Write;

use etcs_blocks::{integrality_check, Catalog};
use etcs_etafn::{
    calf_rationality, eta_log, f_value, f_value_alternative, functional_equation_check,
    nu_bar_analytic, special_family_corrected, special_family_printed, table3_check, theta_oracle,
};
use etcs_hypgeo::{
    aggregate_check, intersection_angle_check, polygon_identity_check, triangle_sanity,
};
use etcs_matching::{enumerate_examples, EtcsExample};
use etcs_nu::{congruence_check, nu_bar_exact_with_inverse};
use etcs_ratarith::{dedekind_sum, mod_inverse, to_f64};
use num_complex::Complex64;
use num_traits::Zero;

use crate::CliError;

/// Tolerance for comparing the eta-function value of `nu_bar` with the
/// exact integer.
pub const NU_BAR_TOLERANCE: f64 = 1e-6;

/// Tolerance for the quadrature oracle.
pub const ORACLE_TOLERANCE: f64 = 1e-4;

/// Tolerance for the rationality of the `F` combination.
pub const CALF_TOLERANCE: f64 = 1e-8;

/// Largest modulus of the exhaustive Dedekind-sum checks.
pub const DEDEKIND_RANGE: i64 = 200;

/// The available suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Dedekind,
    Eta,
    Polygon,
    Congruence,
    Table3,
}

/// The outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(
        suite: &'static str,
        name: impl Into<String>,
        pass: bool,
        detail: impl Into<String>,
    ) -> Self {
        CheckResult {
            suite,
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }

    /// `PASS suite.name detail` or `FAIL suite.name detail`.
    pub fn line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        format!("{status} {}.{} {}", self.suite, self.name, self.detail)
    }
}

/// Tallies a predicate over items: `(checked, failures, first failure)`.
fn tally<T, I: IntoIterator<Item = T>>(
    items: I,
    mut ok: impl FnMut(&T) -> bool,
    describe: impl Fn(&T) -> String,
) -> (usize, usize, Option<String>) {
    let (mut checked, mut failed, mut first) = (0, 0, None);
    for item in items {
        checked += 1;
        if !ok(&item) {
            failed += 1;
            first.get_or_insert_with(|| describe(&item));
        }
    }
    (checked, failed, first)
}

fn from_tally(
    suite: &'static str,
    name: &str,
    (checked, failed, first): (usize, usize, Option<String>),
) -> CheckResult {
    let mut detail = format!("checked={checked} failed={failed}");
    if let Some(f) = first {
        detail.push_str(&format!(" first_failure={f}"));
    }
    CheckResult::new(suite, name, failed == 0 && checked > 0, detail)
}

fn dedekind_suite() -> Vec<CheckResult> {
    const S: &str = "dedekind";
    let pairs = || (1..=DEDEKIND_RANGE).flat_map(|n| (0..n).map(move |k| (k, n)));
    let ds = |k: i64, n: i64| dedekind_sum(&k, &n).expect("n > 0");
    let show = |&(k, n): &(i64, i64)| format!("S({k},{n})");
    let gcd = |mut a: i64, mut b: i64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    };
    let mut out = vec![
        from_tally(
            S,
            "oddness",
            tally(pairs(), |&(k, n)| ds(-k, n) == -ds(k, n), show),
        ),
        from_tally(
            S,
            "periodicity",
            tally(pairs(), |&(k, n)| ds(k + n, n) == ds(k, n), show),
        ),
        from_tally(
            S,
            "integrality_6n",
            tally(
                pairs(),
                |&(k, n)| {
                    let s = ds(k, n);
                    (6 * n * s.numer()) % s.denom() == 0
                },
                show,
            ),
        ),
        from_tally(
            S,
            "inverse_invariance",
            tally(
                pairs().filter(|&(k, n)| gcd(k, n) == 1),
                |&(k, n)| ds(mod_inverse(&k, &n).expect("unit"), n) == ds(k, n),
                show,
            ),
        ),
    ];
    let coprime = (1..=60i64)
        .flat_map(|h| (1..=60i64).map(move |k| (h, k)))
        .filter(|&(h, k)| gcd(h, k) == 1);
    out.push(from_tally(
        S,
        "reciprocity",
        tally(
            coprime,
            |&(h, k)| {
                let s = ds(h, k) + ds(k, h);
                12 * h * k * s.numer() == (h * h + k * k + 1 - 3 * h * k) * s.denom()
            },
            show,
        ),
    ));
    out.push(CheckResult::new(
        S,
        "s_3_10",
        ds(3, 10).is_zero(),
        format!("S(3,10)={}", ds(3, 10)),
    ));
    out
}

fn units(k: i64) -> Vec<i64> {
    (0..k)
        .filter(|e| mod_inverse(e, &k).is_ok() && (k == 1 || *e != 0))
        .collect()
}

fn word(letters: usize, len: usize) -> (i64, i64, i64, i64) {
    let mut m = (1i64, 0i64, 0i64, 1i64);
    let mut code = letters;
    for _ in 0..len {
        let (a, b, c, d) = m;
        m = match code % 3 {
            0 => (a + c, b + d, c, d),
            1 => (a - c, b - d, c, d),
            _ => (-c, -d, a, b),
        };
        code /= 3;
    }
    m
}

fn eta_suite(table: &[EtcsExample], tol: f64) -> Result<Vec<CheckResult>, CliError> {
    const S: &str = "eta";
    let math = |e: etcs_etafn::EtaError| CliError::InvalidInput(e.to_string());
    let mut out = Vec::new();

    let tau = Complex64::new(0.5, 1.5);
    let words = (0..=4usize).flat_map(|len| (0..3usize.pow(len as u32)).map(move |w| word(w, len)));
    let mut fe_error = None;
    let fe = tally(
        words,
        |&(a, b, c, d)| {
            functional_equation_check(tau, a, b, c, d, tol).unwrap_or_else(|e| {
                fe_error.get_or_insert(e.to_string());
                false
            })
        },
        |w| format!("{w:?}"),
    );
    out.push(from_tally(S, "functional_equation", fe));

    let taus = [
        (0.0, 1.0),
        (0.21, 0.43),
        (-2.7, 0.05),
        (0.49, 0.9),
        (3.3, 4.0),
    ];
    let certified = tally(
        taus,
        |&(re, im)| {
            let z = Complex64::new(re, im);
            match (eta_log(z, tol), eta_log(z, tol / 100.0)) {
                (Ok(a), Ok(b)) => a.tail_bound < tol && (a.value - b.value).norm() < tol,
                _ => false,
            }
        },
        |t| format!("{t:?}"),
    );
    out.push(from_tally(S, "certified_truncation", certified));

    let samples: Vec<(i64, i64, f64)> = (2..=6)
        .flat_map(|k| units(k).into_iter().map(move |e| (k, e)))
        .flat_map(|(k, e)| [0.1, 0.3, 1.0, 2.5, 7.0, 10.0].map(move |s| (k, e, s)))
        .collect();
    let f = |k, e, s| f_value(k, e, s, tol);
    let show = |x: &(i64, i64, f64)| format!("{x:?}");
    out.push(from_tally(S, "oddness", tally(samples.iter().copied(), |&(k, e, s)| {
        matches!((f(k, -e, s), f(k, e, s)), (Ok(a), Ok(b)) if (a + b).abs() <= 2.0 * tol)
    }, show)));
    out.push(from_tally(S, "inversion", tally(samples.iter().copied(), |&(k, e, s)| {
        let inv = mod_inverse(&e, &k).expect("unit");
        let two_pi_s = 2.0 * PI * to_f64(&dedekind_sum(&e, &k).expect("k > 0"));
        matches!((f(k, inv, 1.0 / s), f(k, e, s)), (Ok(a), Ok(b)) if (a + b - two_pi_s).abs() <= 2.0 * tol)
    }, show)));
    out.push(from_tally(S, "two_forms", tally(samples.iter().copied(), |&(k, e, s)| {
        matches!((f_value_alternative(k, e, s, tol), f(k, e, s)), (Ok(a), Ok(b)) if (a - b).abs() <= 2.0 * tol)
    }, show)));

    let oracle_samples = [(3, 1, 2f64.sqrt()), (5, 2, 1.0), (4, 1, 1.0)];
    out.push(from_tally(S, "theta_oracle", tally(oracle_samples, |&(k, e, s)| {
        matches!((theta_oracle(k, e, s, ORACLE_TOLERANCE), f(k, e, s)), (Ok(a), Ok(b)) if (a - b).abs() <= ORACLE_TOLERANCE)
    }, show)));

    let mut worst: f64 = 0.0;
    for k in 2..=6 {
        worst = worst.max(special_family_corrected(k, tol).map_err(math)?.residual);
    }
    out.push(CheckResult::new(
        S,
        "special_family_k_2_6",
        worst <= tol,
        format!("form=(3k+2)pi/(12k)-arctan(sqrt((k+1)/(k-1))) max_residual={worst:.3e}"),
    ));
    let printed = special_family_printed(3, tol).map_err(math)?;
    out.push(CheckResult::new(
        S,
        "special_family_opposite_sign",
        (printed.value + printed.expected).abs() <= tol,
        format!(
            "k=3 F={:.12} arctan_form={:.12}",
            printed.value, printed.expected
        ),
    ));

    let mut worst: f64 = 0.0;
    let analytic = tally(
        table.iter(),
        |ex| {
            let b = &ex.breakdown;
            match nu_bar_analytic(&ex.gluing, &b.d_plus, &b.d_minus, ex.m_rho, tol) {
                Ok(v) => {
                    let d = (v - ex.nu_bar() as f64).abs();
                    worst = worst.max(d);
                    d < NU_BAR_TOLERANCE
                }
                Err(_) => false,
            }
        },
        |ex| format!("row{}", ex.row_id),
    );
    let mut r = from_tally(S, "nu_bar_analytic_vs_exact", analytic);
    r.detail.push_str(&format!(" max_delta={worst:.3e}"));
    out.push(r);

    let calf = tally(
        table.iter(),
        |ex| {
            calf_rationality(&ex.gluing, CALF_TOLERANCE)
                .map(|c| c.pass)
                .unwrap_or(false)
        },
        |ex| format!("row{}", ex.row_id),
    );
    out.push(from_tally(S, "calf_rationality", calf));
    if let Some(e) = fe_error {
        return Err(CliError::InvalidInput(e));
    }
    Ok(out)
}

fn polygon_suite(table: &[EtcsExample], tol: f64) -> Vec<CheckResult> {
    const S: &str = "polygon";
    let rows: Vec<&EtcsExample> = table
        .iter()
        .filter(|ex| ex.gluing.matrix.m > 0 && ex.gluing.matrix.n > 0)
        .collect();
    let show = |ex: &&EtcsExample| format!("row{}", ex.row_id);
    vec![
        from_tally(
            S,
            "identity",
            tally(
                rows.iter().copied(),
                |ex| {
                    polygon_identity_check(&ex.gluing)
                        .map(|i| i.pass)
                        .unwrap_or(false)
                },
                show,
            ),
        ),
        from_tally(
            S,
            "b1_congruence",
            tally(
                rows.iter().copied(),
                |ex| {
                    polygon_identity_check(&ex.gluing)
                        .map(|i| i.congruence_holds)
                        .unwrap_or(false)
                },
                show,
            ),
        ),
        from_tally(
            S,
            "intersection_angle",
            tally(
                rows.iter().copied(),
                |ex| {
                    intersection_angle_check(&ex.gluing, tol)
                        .map(|i| i.pass)
                        .unwrap_or(false)
                },
                show,
            ),
        ),
        from_tally(
            S,
            "area_aggregate",
            tally(
                rows.iter().copied(),
                |ex| aggregate_check(&ex.gluing).map(|a| a.pass).unwrap_or(false),
                show,
            ),
        ),
        CheckResult::new(
            S,
            "ideal_triangle",
            triangle_sanity().pass,
            "cusp_sum=3 area/4pi=1/4",
        ),
    ]
}

fn congruence_suite(catalog: &Catalog, table: &[EtcsExample]) -> Vec<CheckResult> {
    const S: &str = "congruence";
    let show = |ex: &&EtcsExample| format!("row{}", ex.row_id);
    let blocks: Vec<(u32, i64, i64)> = catalog
        .blocks()
        .iter()
        .flat_map(|b| units(b.k).into_iter().map(move |e| (b.id, b.k, e)))
        .collect();
    vec![
        from_tally(
            S,
            "mod_24",
            tally(
                table.iter(),
                |ex| {
                    let b = &ex.breakdown;
                    congruence_check(&ex.gluing, &b.d_plus, &b.d_minus, ex.m_rho, &b.nu_bar)
                },
                show,
            ),
        ),
        from_tally(
            S,
            "block_integrality",
            tally(
                blocks,
                |&(id, _, e)| {
                    catalog
                        .get(id)
                        .map(|b| integrality_check(b, e).unwrap_or(false))
                        .unwrap_or(false)
                },
                |x| format!("{x:?}"),
            ),
        ),
        from_tally(
            S,
            "nu_bar_integral",
            tally(table.iter(), |ex| ex.breakdown.nu_bar.is_integer(), show),
        ),
        from_tally(
            S,
            "representative_shift",
            tally(
                table.iter(),
                |ex| {
                    let g = &ex.gluing;
                    let b = &ex.breakdown;
                    (-2..=2).all(|t| {
                        nu_bar_exact_with_inverse(
                            g,
                            &b.d_plus,
                            &b.d_minus,
                            ex.m_rho,
                            g.eps_plus_inv() + t * g.k_plus,
                        )
                        .map(|x| x.nu_bar == b.nu_bar)
                        .unwrap_or(false)
                    })
                },
                show,
            ),
        ),
    ]
}

fn table3_suite(tol: f64) -> Result<Vec<CheckResult>, CliError> {
    let report = table3_check(tol).map_err(|e| CliError::InvalidInput(e.to_string()))?;
    Ok(report
        .results
        .iter()
        .map(|r| {
            CheckResult::new(
                "table3",
                format!("row{:02}", r.index),
                r.pass,
                format!(
                    "k={} eps={} s={} residual={:.2e} companion={:.2e} pair={:.2e}",
                    r.k, r.eps, r.s_label, r.residual, r.companion_residual, r.pair_residual
                ),
            )
        })
        .collect())
}

/// Runs one suite (or all of them) and returns every check.
pub fn run_suite(
    catalog: &Catalog,
    suite: Suite,
    tol: f64,
    workers: usize,
) -> Result<Vec<CheckResult>, CliError> {
    if !(tol > 0.0) {
        return Err(CliError::Config(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let needs_table = matches!(
        suite,
        Suite::All | Suite::Eta | Suite::Polygon | Suite::Congruence
    );
    let table = if needs_table {
        enumerate_examples(catalog, workers).map_err(|e| CliError::InvalidInput(e.to_string()))?
    } else {
        Vec::new()
    };
    let mut out = Vec::new();
    if matches!(suite, Suite::All | Suite::Dedekind) {
        out.extend(dedekind_suite());
    }
    if matches!(suite, Suite::All | Suite::Eta) {
        out.extend(eta_suite(&table, tol)?);
    }
    if matches!(suite, Suite::All | Suite::Polygon) {
        out.extend(polygon_suite(&table, tol));
    }
    if matches!(suite, Suite::All | Suite::Congruence) {
        out.extend(congruence_suite(catalog, &table));
    }
    if matches!(suite, Suite::All | Suite::Table3) {
        out.extend(table3_suite(tol)?);
    }
    Ok(out)
}

/// Prints one line per check and a summary; fails with exit status 3 if any
/// check fails.
pub fn cmd_verify(
    catalog: &Catalog,
    suite: Suite,
    tol: f64,
    workers: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let results = run_suite(catalog, suite, tol, workers)?;
    for r in &results {
        writeln!(out, "{}", r.line())?;
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    writeln!(
        out,
        "summary passed={} failed={failed}",
        results.len() - failed
    )?;
    if failed > 0 {
        return Err(CliError::Verification { failed });
    }
    Ok(())
}
