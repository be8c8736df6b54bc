//! One line per acceptance criterion: `PASS` or `FAIL`, then the evidence.
//! Runs without the libtest harness so every line is printed; exits non-zero
//! if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use spiked_core::reproduce::{self, TableReport};
use spiked_core::selfcheck::{self, Check};

fn report_table(id: u8, title: &str, r: &TableReport, budget: Duration) -> bool {
    let on_time = r.elapsed <= budget;
    let ok = r.pass() && on_time;
    println!(
        "{} C{id} {title}: {}/{} cells, max |dev| {:.3e}, {:.2?} (budget {:?})",
        if ok { "PASS" } else { "FAIL" },
        r.cells.len() - r.failures().len(),
        r.cells.len() + r.missing.len(),
        r.max_deviation(),
        r.elapsed,
        budget
    );
    for c in r.failures() {
        println!("    {} computed {:.9} reference {:.9} tol {:.0e}", c.label, c.computed, c.reference, c.tolerance);
    }
    for (label, why) in &r.missing {
        println!("    missing {label}: {why}");
    }
    ok
}

fn report_checks(id: u8, title: &str, checks: &[Check], elapsed: Duration, budget: Option<Duration>) -> bool {
    let on_time = budget.is_none_or(|b| elapsed <= b);
    let ok = checks.iter().all(|c| c.pass) && on_time;
    println!(
        "{} C{id} {title}: {}/{} checks, {:.2?}",
        if ok { "PASS" } else { "FAIL" },
        checks.iter().filter(|c| c.pass).count(),
        checks.len(),
        elapsed
    );
    for c in checks {
        println!("    {c}");
    }
    ok
}

fn c1_table1_pps() -> bool {
    report_table(1, "Table 1 (PPS)", &reproduce::table1(), Duration::from_secs(60))
}

fn c2_table2_determinant() -> bool {
    report_table(2, "Table 2 (determinant)", &reproduce::table2(), Duration::from_secs(10))
}

fn c3_table3_matrix() -> bool {
    report_table(3, "Table 3 (matrix)", &reproduce::table3(), Duration::from_secs(30))
}

fn c4_table4_energies() -> bool {
    report_table(4, "Table 4 (energies)", &reproduce::table4(), Duration::from_secs(120))
}

fn c5_cross_method() -> bool {
    report_table(5, "PPS vs matrix", &reproduce::cross_method(), Duration::from_secs(120))
}

fn c6_wavefunctions() -> bool {
    let t = Instant::now();
    let checks = match reproduce::table1_pps(5) {
        Ok(s) => selfcheck::wavefunction_checks(&s.spectrum.levels),
        Err(e) => {
            println!("FAIL C6 l = 5 spectrum: {e}");
            return false;
        }
    };
    report_checks(6, "wavefunctions of the six lowest l = 5 states", &checks, t.elapsed(), None)
}

fn c7_appendix_suite() -> bool {
    let t = Instant::now();
    let checks = selfcheck::appendix_suite();
    report_checks(7, "polynomial identity suite", &checks, t.elapsed(), Some(Duration::from_secs(5)))
}

fn c8_oscillator_oracle() -> bool {
    let t = Instant::now();
    let checks = [selfcheck::oscillator_oracle()];
    report_checks(8, "a = 0 matrix spectrum", &checks, t.elapsed(), None)
}

fn main() -> ExitCode {
    let results = [
        c1_table1_pps(),
        c2_table2_determinant(),
        c3_table3_matrix(),
        c4_table4_energies(),
        c5_cross_method(),
        c6_wavefunctions(),
        c7_appendix_suite(),
        c8_oscillator_oracle(),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
