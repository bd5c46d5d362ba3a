//! Acceptance run: one PASS/FAIL line per criterion. Dimensions are compared
//! exactly; runtimes use the bounds given next to each check.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nilrep_core::catalog::{self, CatalogName};
use nilrep_core::quotient::{reduce_once, reduce_to_fixpoint};
use nilrep_core::regular::nu;
use nilrep_core::tables::{self, Column, RowReport, RunOptions, Status};
use nilrep_core::uea::enumerate_monomials;
use nilrep_core::{
    algorithm_affine, algorithm_dual, algorithm_quotient, algorithm_regular, regular_unpruned, AffineConfig, AffineOutcome,
    Field, LieAlgebra, PrimeField, Rationals, Representation, RepresentationFile,
};

const QUICK: Duration = Duration::from_secs(1);

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Outcome {
            pass,
            summary: summary.into(),
            details: Vec::new(),
        }
    }
}

fn print(n: usize, title: &str, outcome: &Outcome, informational: bool) {
    let verdict = if outcome.pass { "PASS" } else { "FAIL" };
    let tag = if informational { " (informational)" } else { "" };
    println!("criterion {n} {title}: {verdict}{tag}  {}", outcome.summary);
    for d in &outcome.details {
        println!("    {d}");
    }
}

fn sound<F: Field>(rep: &Representation<F>) -> bool {
    rep.is_homomorphism().is_ok() && rep.is_faithful()
}

fn heisenberg_pipeline() -> Outcome {
    let start = Instant::now();
    let g = catalog::heisenberg(Rationals);
    let dims = (|| -> nilrep_core::Result<_> {
        let unpruned = regular_unpruned(&g)?.dim();
        let regular = algorithm_regular(&g)?;
        let quotient = algorithm_quotient(&g)?;
        let dual = algorithm_dual(&g)?;
        let affine = algorithm_affine(&g, &AffineConfig::default())?;
        let all_sound = sound(&regular) && sound(&quotient) && sound(&dual);
        let affine_dim = affine.representation().filter(|r| sound(r)).map(|r| r.dim());
        Ok((unpruned, regular.dim(), quotient.dim(), dual.dim(), affine_dim, all_sound))
    })();
    let elapsed = start.elapsed();
    match dims {
        Ok((u, r, q, d, a, all_sound)) => {
            let pass = (u, r, q, d, a) == (7, 3, 3, 3, Some(4)) && all_sound && elapsed < QUICK;
            Outcome::new(
                pass,
                format!("unpruned {u}, regular {r}, quotient {q}, dual {d}, affine {a:?}, {elapsed:.2?} (bound 1s)"),
            )
        }
        Err(e) => Outcome::new(false, format!("error: {e}")),
    }
}

fn catalog_names() -> Vec<CatalogName> {
    let mut names = vec![CatalogName::Heisenberg];
    names.extend((3..=7).map(CatalogName::UpperTriangular));
    for (n, c) in [(2, 5), (2, 6), (2, 7), (2, 8), (3, 4), (3, 5), (4, 3), (4, 4)] {
        names.push(CatalogName::FreeNilpotent(n, c));
    }
    names.extend((13..=20).map(CatalogName::Filiform));
    names
}

fn monomial_counts() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for name in catalog_names() {
        let g = name.build(Rationals).expect("catalog algebra");
        let c = g.nilpotency_class().expect("nilpotent");
        let (adapted, _) = g.adapted_basis().expect("adapted basis");
        let count = enumerate_monomials(&adapted.weights, c).expect("weights are positive").len() as u128;
        let formula = nu(g.dim(), c);
        checked += 1;
        if count != formula {
            mismatches.push(format!("{name}: d={} c={c} monomials {count}, nu {formula}", g.dim()));
        }
    }
    let elapsed = start.elapsed();
    let base = nu(3, 2);
    let pass = base == 7 && mismatches.is_empty() && elapsed < QUICK;
    let mut outcome = Outcome::new(
        pass,
        format!(
            "nu(3,2) = {base}; {} of {checked} catalog algebras have monomial count != nu(d,c); {elapsed:.2?} (bound 1s)",
            mismatches.len()
        ),
    );
    outcome.details = mismatches;
    if !outcome.details.is_empty() {
        outcome.details.push(
            "nu(d,c) only depends on (d,c) and equals the count for weight profile (1,1,2,..,c); \
             algebras with more generators or thicker layers have fewer monomials"
                .into(),
        );
    }
    outcome
}

fn run_table(which: u8) -> Vec<RowReport> {
    let options = RunOptions::default();
    tables::reference_table(which)
        .expect("known table")
        .iter()
        .map(|row| tables::run_row(row, &options).expect("row runs"))
        .collect()
}

fn row_line(report: &RowReport) -> String {
    let cells: Vec<String> = report
        .cells
        .iter()
        .map(|c| {
            let ours = c.ours.map_or("-".to_string(), |d| d.to_string());
            let unverified = if c.verified { "" } else { " UNVERIFIED" };
            format!("{} {ours} {}{unverified}", c.column, c.status)
        })
        .collect();
    format!("{}: {}", report.row.label(), cells.join(", "))
}

/// Dimension columns must match and every representation must verify.
/// `affine_ok` decides which Affine statuses are acceptable.
fn table_outcome(reports: &[RowReport], affine_ok: impl Fn(&Status) -> bool) -> Outcome {
    let mut bad = 0;
    let mut details = Vec::new();
    for r in reports {
        let row_ok = r.diff_count() == 0
            && r.all_verified()
            && r.cells.iter().filter(|c| c.column == Column::Affine).all(|c| affine_ok(&c.status));
        bad += usize::from(!row_ok);
        details.push(row_line(r));
    }
    let mut outcome = Outcome::new(bad == 0, format!("{} rows, {bad} not as expected", reports.len()));
    outcome.details = details;
    outcome
}

fn table2_outcome(reports: &[RowReport]) -> Outcome {
    let mut outcome = table_outcome(reports, |s| {
        matches!(s, Status::Match | Status::AffineSuccess { .. } | Status::AffineFail { expected_success: false, .. })
    });
    let witt: Vec<usize> = [(2, 5), (2, 6), (2, 7), (2, 8), (3, 4), (3, 5), (4, 3), (4, 4)]
        .iter()
        .map(|&(n, c)| catalog::witt_dimension(n, c))
        .collect();
    let built: Vec<usize> = reports.iter().map(|r| r.computed_algebra_dim).collect();
    let expected = [14, 23, 41, 71, 32, 80, 30, 90];
    if witt != expected || built != expected {
        outcome.pass = false;
    }
    outcome.summary.push_str(&format!("; Witt {witt:?}, built {built:?}"));
    let extra = reports
        .iter()
        .flat_map(|r| &r.cells)
        .filter(|c| matches!(c.status, Status::AffineSuccess { .. }))
        .count();
    if extra > 0 {
        outcome.summary.push_str(&format!("; Affine also succeeded on {extra} row(s) the reference could not solve"));
    }
    outcome
}

fn table3_outcome(reports: &[RowReport]) -> Outcome {
    let mut outcome = table_outcome(reports, |s| !s.is_diff());
    let quotient_is_dual = reports
        .iter()
        .all(|r| r.cell(Column::Quotient).map(|c| c.ours) == r.cell(Column::Dual).map(|c| c.ours));
    outcome.pass &= quotient_is_dual;
    let successes: Vec<String> = reports
        .iter()
        .filter(|r| r.cell(Column::Affine).is_some_and(|c| c.ours.is_some()))
        .map(|r| r.row.label())
        .collect();
    if successes.is_empty() {
        outcome.summary.push_str("; Affine failed on every row");
    } else {
        outcome.summary.push_str(&format!(
            "; FINDING: Affine found an (n+1)-dimensional faithful module for {}",
            successes.join(", ")
        ));
    }
    outcome
}

/// Runs every algorithm on `g` and records outputs that are not faithful
/// homomorphisms. An Affine failure produces no output and is not counted.
fn check_outputs<F: Field>(name: &str, g: &LieAlgebra<F>, failures: &mut Vec<String>) {
    let outputs = [
        ("regular", algorithm_regular(g).map(Some)),
        ("quotient", algorithm_quotient(g).map(Some)),
        ("dual", algorithm_dual(g).map(Some)),
        ("affine", algorithm_affine(g, &AffineConfig::default()).map(|o| o.representation().cloned())),
    ];
    for (alg, rep) in outputs {
        match rep {
            Ok(Some(r)) if !sound(&r) => failures.push(format!("{name} {alg}: not a faithful homomorphism")),
            Err(e) => failures.push(format!("{name} {alg}: {e}")),
            _ => {}
        }
    }
}

fn property_suite() -> Outcome {
    let mut failures = Vec::new();
    let mut parts = Vec::new();

    // (a)
    let before = failures.len();
    check_outputs("heisenberg", &catalog::heisenberg(Rationals), &mut failures);
    for p in [2, 3] {
        let f = PrimeField::new(p).unwrap();
        for n in 3..=5 {
            check_outputs(&format!("utri:{n} GF({p})"), &catalog::upper_triangular(n, f).unwrap(), &mut failures);
        }
    }
    for n in 3..=5 {
        check_outputs(&format!("utri:{n} Q"), &catalog::upper_triangular(n, Rationals).unwrap(), &mut failures);
    }
    for (n, c) in [(2, 3), (2, 4), (3, 3)] {
        check_outputs(&format!("freenilp:{n},{c}"), &catalog::free_nilpotent(n, c, Rationals).unwrap(), &mut failures);
    }
    check_outputs("filiform:13", &catalog::filiform_f(13).unwrap(), &mut failures);
    parts.push(format!("a {}", failures.len() == before));

    // (b)
    let before = failures.len();
    let mut jacobi_names = catalog_names();
    jacobi_names.extend((21..=25).map(CatalogName::Filiform));
    for name in jacobi_names {
        let g = name.build(Rationals).unwrap();
        let bad = g.check_jacobi();
        if !bad.is_empty() {
            failures.push(format!("{name}: Jacobi fails on {} triples", bad.len()));
        }
    }
    parts.push(format!("b {}", failures.len() == before));

    // (c)
    let before = failures.len();
    for n in 13..=40 {
        match catalog::pfaff_check(n) {
            Ok(bad) if bad.is_empty() => {}
            Ok(bad) => failures.push(format!("n={n}: Pfaff identities fail: {bad:?}")),
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    parts.push(format!("c {}", failures.len() == before));

    // (d)
    let before = failures.len();
    for n in 13..=16 {
        let b = catalog::filiform_f(n).unwrap().betti2();
        if b != 2 {
            failures.push(format!("betti2(f_{n}) = {b}"));
        }
    }
    parts.push(format!("d {}", failures.len() == before));

    // (e)
    let before = failures.len();
    let mut dual_check = |name: &str, rep: Representation<_>| {
        let s = rep.annihilated_subspace();
        if s.dim() != 1 || !rep.center_image().is_subspace_of(&s).unwrap() {
            failures.push(format!("{name}: dual annihilated dim {}", s.dim()));
        }
    };
    dual_check("heisenberg", algorithm_dual(&catalog::heisenberg(Rationals)).unwrap());
    dual_check("utri:5", algorithm_dual(&catalog::upper_triangular(5, Rationals).unwrap()).unwrap());
    dual_check("freenilp:2,4", algorithm_dual(&catalog::free_nilpotent(2, 4, Rationals).unwrap()).unwrap());
    dual_check("filiform:13", algorithm_dual(&catalog::filiform_f(13).unwrap()).unwrap());
    let f3 = PrimeField::new(3).unwrap();
    let dual = algorithm_dual(&catalog::upper_triangular(5, f3).unwrap()).unwrap();
    let s = dual.annihilated_subspace();
    if s.dim() != 1 || !dual.center_image().is_subspace_of(&s).unwrap() {
        failures.push("utri:5 GF(3): dual structure".into());
    }
    parts.push(format!("e {}", failures.len() == before));

    // (f)
    let before = failures.len();
    for name in [
        CatalogName::Heisenberg,
        CatalogName::UpperTriangular(5),
        CatalogName::FreeNilpotent(2, 4),
        CatalogName::Filiform(13),
    ] {
        let g = name.build(Rationals).unwrap();
        let (fixed, _) = reduce_to_fixpoint(&algorithm_regular(&g).unwrap()).unwrap();
        let (again, step) = reduce_once(&fixed).unwrap();
        if !step.removed.is_zero() || again != fixed {
            failures.push(format!("{name}: quotient fixpoint not stable"));
        }
    }
    parts.push(format!("f {}", failures.len() == before));

    // (g)
    let before = failures.len();
    let config = AffineConfig {
        seed: 17,
        ..AffineConfig::default()
    };
    let g = catalog::free_nilpotent(2, 5, Rationals).unwrap();
    let json = |o: AffineOutcome<Rationals>| o.representation().map(|r| RepresentationFile::from_representation(r).to_json());
    let first = json(algorithm_affine(&g, &config).unwrap());
    let second = json(algorithm_affine(&g, &config).unwrap());
    if first.is_none() || first != second {
        failures.push("freenilp:2,5: affine output differs between runs".into());
    }
    let f13 = catalog::filiform_f(13).unwrap();
    let retry = AffineConfig { retries: 3, ..config };
    if algorithm_affine(&f13, &retry).unwrap() != algorithm_affine(&f13, &retry).unwrap() {
        failures.push("filiform:13: affine outcome differs between runs".into());
    }
    parts.push(format!("g {}", failures.len() == before));

    let mut outcome = Outcome::new(failures.is_empty(), parts.join(", "));
    outcome.details = failures;
    outcome
}

/// Reference seconds per row, in table order, for the columns that have a time.
/// `None` marks an Affine run that did not finish.
fn reference_seconds(which: u8) -> Vec<Vec<Option<f64>>> {
    let s = |v: &[f64]| v.iter().map(|&x| Some(x)).collect::<Vec<_>>();
    match which {
        1 => vec![
            s(&[0.0, 0.1, 0.0]),
            s(&[0.25, 0.3, 0.3]),
            s(&[3.4, 3.6, 3.5]),
            s(&[65.0, 66.0, 45.0]),
            s(&[0.0, 0.0, 0.0]),
            s(&[0.2, 0.3, 0.3]),
            s(&[3.4, 3.6, 3.7]),
            s(&[65.0, 67.0, 46.0]),
            s(&[0.0, 0.0, 0.0]),
            s(&[0.2, 0.3, 0.3]),
            s(&[3.0, 3.2, 3.6]),
            s(&[66.0, 67.0, 45.0]),
        ],
        2 => vec![
            s(&[0.2, 0.3, 0.5]),
            s(&[0.9, 1.3, 8.4]),
            vec![Some(3.2), Some(4.8), None],
            vec![Some(14.0), Some(21.0), None],
            s(&[0.8, 1.7, 54.0]),
            vec![Some(11.5), Some(17.5), None],
            s(&[0.9, 1.3, 37.0]),
            vec![Some(13.0), Some(19.7), None],
        ],
        _ => [
            [8.6, 14.0, 12.3],
            [17.0, 28.0, 24.7],
            [33.0, 63.0, 50.0],
            [64.0, 125.0, 102.0],
            [123.0, 323.0, 218.0],
            [234.0, 731.0, 461.0],
            [487.0, 1844.0, 1162.0],
            [920.0, 4009.0, 3039.0],
        ]
        .iter()
        .map(|r| vec![Some(r[0]), Some(r[1]), Some(r[2]), None])
        .collect(),
    }
}

/// Each row, summed over the columns with a reference time, must take at
/// most 1/100 of the reference (with a 0.1 s floor for rows reported as 0.0).
fn timing(all: &[(u8, &[RowReport])]) -> Outcome {
    let mut slow = 0;
    let mut rows = 0;
    let mut details = Vec::new();
    for (which, reports) in all {
        for (report, reference) in reports.iter().zip(reference_seconds(*which)) {
            let mut ours = 0.0;
            let mut theirs = 0.0;
            for (cell, t) in report.cells.iter().zip(&reference) {
                if let Some(t) = t {
                    ours += cell.elapsed.as_secs_f64();
                    theirs += t;
                }
            }
            let bound = (theirs / 100.0).max(0.1);
            rows += 1;
            let within = ours <= bound;
            slow += usize::from(!within);
            details.push(format!(
                "{}: {ours:.3}s vs reference {theirs:.2}s (bound {bound:.3}s){}",
                report.row.label(),
                if within { "" } else { " over" }
            ));
        }
    }
    let mut outcome = Outcome::new(slow == 0, format!("{rows} rows, {slow} over the bound"));
    outcome.details = details;
    outcome
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: usize, title: &str, outcome: Outcome| {
        print(n, title, &outcome, false);
        failed += usize::from(!outcome.pass);
    };

    report(1, "heisenberg pipeline", heisenberg_pipeline());
    report(2, "monomial count equals nu(d,c)", monomial_counts());

    let t1 = run_table(1);
    report(3, "table 1 (U_n)", table_outcome(&t1, |s| *s == Status::Match));
    let t2 = run_table(2);
    report(4, "table 2 (N_{n,c})", table2_outcome(&t2));
    let t3 = run_table(3);
    report(5, "table 3 (f_n)", table3_outcome(&t3));
    report(6, "property suite", property_suite());

    print(7, "timing sanity", &timing(&[(1, &t1), (2, &t2), (3, &t3)]), true);

    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
