//! Line-oriented output: `key: value` lines, vectors as space-separated
//! element tokens, matrices in the shared file format.

use std::fmt::Display;

use tropcram::solvers::SolveReport;

pub fn join<T: Display>(x: &[T]) -> String {
    x.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn field(out: &mut String, key: &str, value: impl Display) {
    out.push_str(&format!("{key}: {value}\n"));
}

pub fn solve_report<T: Display>(r: &SolveReport<T>, trace: bool) -> String {
    let mut out = String::new();
    if let Some(status) = r.status {
        field(&mut out, "status", status);
    }
    if let Some(det) = &r.det {
        field(&mut out, "det", det);
    }
    if let Some(c) = &r.cramer {
        field(&mut out, "cramer", join(c));
    }
    if let Some(m) = &r.all_solutions_modulus {
        field(&mut out, "modulus", join(m));
    }
    if trace {
        for (k, x) in r.trace.iter().enumerate() {
            field(&mut out, &format!("x{k}"), join(x));
        }
    }
    if !r.trace.is_empty() {
        field(&mut out, "iterations", r.iterations());
        if r.row_permutation.iter().enumerate().any(|(i, &p)| i != p) {
            field(&mut out, "row-order", join(&r.row_permutation));
        }
    }
    match &r.solution {
        Some(x) => field(&mut out, "solution", join(x)),
        None => field(&mut out, "solution", "none"),
    }
    out
}
