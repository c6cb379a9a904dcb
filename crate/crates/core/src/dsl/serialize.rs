use std::fmt::Write;

use crate::fis::SugenoFis;

/// Canonical text for `fis`.
///
/// Numbers use the shortest representation that parses back to the same
/// `f64`, so integral values print without a fraction (`1`, not `1.0`).
pub fn serialize(fis: &SugenoFis) -> String {
    let mut out = String::new();
    // writing into a String cannot fail
    let _ = write_fis(&mut out, fis);
    out
}

fn write_fis(out: &mut String, fis: &SugenoFis) -> std::fmt::Result {
    writeln!(out, "set and_operator {}", fis.and_operator())?;
    for var in fis.inputs() {
        writeln!(out)?;
        write!(out, "variable input {}", var.name())?;
        if let Some(unit) = var.unit() {
            write!(out, " [{unit}]")?;
        }
        writeln!(out, " domain {} {}", var.domain().lo(), var.domain().hi())?;
        for term in var.terms() {
            let [a, b, c, d] = term.mf.breakpoints();
            writeln!(out, "  mf {} trap {a} {b} {c} {d}", term.name)?;
        }
    }
    let output = fis.output();
    writeln!(out)?;
    writeln!(
        out,
        "variable output {} domain {} {}",
        output.name,
        output.domain.lo(),
        output.domain.hi()
    )?;
    if !fis.rules().is_empty() {
        writeln!(out)?;
    }
    for rule in fis.rules() {
        write!(out, "rule IF ")?;
        for (i, clause) in rule.antecedent.iter().enumerate() {
            if i > 0 {
                write!(out, " AND ")?;
            }
            write!(out, "{} IS {}", clause.variable, clause.term)?;
        }
        writeln!(out, " THEN {} = {}", output.name, rule.consequent)?;
    }
    Ok(())
}
