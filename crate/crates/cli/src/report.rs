use std::io::{self, Write};

use perfiso_core::triangle::{enumerate_isosceles_candidates, HeronTriangle};
use perfiso_core::ExactInt;

pub const HERON_HEADER: &str = "a,b,c,perimeter,area_sq_times16,area,median_sq_a,median_sq_b,median_sq_c,rational_median_count,isosceles,perfect";

pub const ISOSCELES_HEADER: &str = "m,n,A,B,w,h_sq,forms_triangle,witness";

fn flag(b: bool) -> u8 {
    b as u8
}

/// One row per triangle, in the order given (perimeter, then sides). LF line endings.
pub fn emit_heron_report(rows: &[HeronTriangle], out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{HERON_HEADER}")?;
    for t in rows {
        let m = &t.metrics;
        let [a, b, c] = t.sides;
        let area = m.area.as_ref().map(ToString::to_string).unwrap_or_default();
        writeln!(
            out,
            "{a},{b},{c},{},{},{area},{},{},{},{},{},{}",
            t.perimeter(),
            m.area_sq_times16,
            m.median_sq_a,
            m.median_sq_b,
            m.median_sq_c,
            m.rational_median_count,
            flag(m.isosceles),
            flag(m.perfect)
        )?;
    }
    Ok(())
}

/// Every isosceles generator candidate up to `bound`, ordered by `(m, n)`.
pub fn emit_isosceles_report(bound: &ExactInt, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{ISOSCELES_HEADER}")?;
    for p in enumerate_isosceles_candidates(bound) {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            p.m,
            p.n,
            p.a,
            p.b,
            p.w,
            p.h_sq,
            flag(p.forms_triangle()),
            flag(p.is_witness())
        )?;
    }
    Ok(())
}
