//! Table, JSON and CSV writers. All numbers travel as decimal strings.

use std::io::{self, Write};

use serde::Serialize;

use binharm_core::catalog::Identity;
use binharm_core::hpreal::{const_catalan, const_gamma, const_log2, const_log3, const_pi, const_zeta2};
use binharm_core::special::dilog_rational;
use binharm_core::{ExactRational, HPReal, PrecisionContext, Result, Status, VerificationReport};

use crate::Format;

#[derive(Serialize)]
pub struct ListRow {
    pub id: &'static str,
    pub paper_ref: &'static str,
    pub class: String,
    pub has_closed_form: bool,
}

impl From<&Identity> for ListRow {
    fn from(i: &Identity) -> Self {
        ListRow { id: i.id, paper_ref: i.reference, class: i.class().to_string(), has_closed_form: !i.is_open() }
    }
}

#[derive(Serialize)]
pub struct Eval {
    pub target: String,
    pub x: Option<String>,
    pub terms: u64,
    pub partial_sum: String,
    pub closed_form: Option<String>,
    pub difference: Option<String>,
    pub note: Option<String>,
}

impl Eval {
    pub fn new(
        target: &str,
        x: Option<&str>,
        terms: u64,
        partial: &HPReal,
        closed: Option<&HPReal>,
        note: Option<String>,
        digits: u32,
    ) -> Self {
        Eval {
            target: target.to_string(),
            x: x.map(str::to_string),
            terms,
            partial_sum: partial.to_sig_string(digits),
            closed_form: closed.map(|c| c.to_sig_string(digits)),
            difference: closed.map(|c| (partial - c).to_sci_string(6)),
            note,
        }
    }
}

#[derive(Serialize)]
pub struct Constant {
    pub name: &'static str,
    pub value: String,
}

pub fn constants(ctx: &PrecisionContext, digits: u32) -> Result<Vec<Constant>> {
    let li2 = |p, q| dilog_rational(&ExactRational::ratio(p, q), ctx);
    let values = [
        ("pi", const_pi(ctx)),
        ("log2", const_log2(ctx)),
        ("log3", const_log3(ctx)),
        ("gamma", const_gamma(ctx)),
        ("zeta(2)", const_zeta2(ctx)),
        ("G", const_catalan(ctx)),
        ("Li2(1/2)", li2(1, 2)?),
        ("Li2(1/3)", li2(1, 3)?),
        ("Li2(1/4)", li2(1, 4)?),
        ("Li2(1/9)", li2(1, 9)?),
    ];
    // truncated, so the printed digits are all correct digits
    Ok(values
        .into_iter()
        .map(|(name, v)| Constant { name, value: v.to_sig_string_truncated(digits) })
        .collect())
}

fn io_err(e: impl std::error::Error + Send + Sync + 'static) -> io::Error {
    io::Error::other(e)
}

fn json<T: Serialize + ?Sized>(w: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(io_err)?;
    writeln!(w)
}

fn csv<T: Serialize>(w: &mut dyn Write, rows: &[T]) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r).map_err(io_err)?;
    }
    out.flush()
}

/// Left-aligned columns, two spaces apart.
fn table(w: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (k, cell) in r.iter().enumerate() {
            widths[k] = widths[k].max(cell.chars().count());
        }
    }
    let line = |w: &mut dyn Write, cells: Vec<&str>| -> io::Result<()> {
        let n = cells.len();
        for (k, c) in cells.into_iter().enumerate() {
            if k + 1 == n {
                writeln!(w, "{c}")?;
            } else {
                write!(w, "{c:<width$}  ", width = widths[k])?;
            }
        }
        Ok(())
    };
    line(w, header.to_vec())?;
    for r in rows {
        line(w, r.iter().map(String::as_str).collect())?;
    }
    Ok(())
}

pub fn list(w: &mut dyn Write, rows: &[ListRow], format: Format) -> io::Result<()> {
    match format {
        Format::Json => json(w, rows),
        Format::Csv => csv(w, rows),
        Format::Table => {
            let cells: Vec<_> = rows
                .iter()
                .map(|r| {
                    let closed = if r.has_closed_form { "yes" } else { "no" };
                    vec![r.id.to_string(), r.class.clone(), closed.to_string(), r.paper_ref.to_string()]
                })
                .collect();
            table(w, &["ID", "CLASS", "CLOSED", "REFERENCE"], &cells)?;
            writeln!(w, "{} identities", rows.len())
        }
    }
}

pub fn reports(w: &mut dyn Write, reports: &[VerificationReport], format: Format) -> io::Result<()> {
    match format {
        Format::Json => json(w, reports),
        Format::Csv => csv(w, reports),
        Format::Table => {
            let cells: Vec<_> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.id.clone(),
                        r.status.to_string(),
                        r.digits_verified.to_string(),
                        r.terms_used.to_string(),
                        r.elapsed_ms.to_string(),
                        r.rel_diff.clone(),
                        r.lhs_value.clone(),
                    ]
                })
                .collect();
            table(w, &["ID", "STATUS", "DIGITS", "TERMS", "MS", "REL_DIFF", "LHS"], &cells)?;
            let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
            writeln!(
                w,
                "{} passed, {} failed, {} open, {} errors",
                count(Status::Pass),
                count(Status::Fail),
                count(Status::OpenEvaluated),
                count(Status::Error)
            )
        }
    }
}

pub fn eval(w: &mut dyn Write, e: &Eval, format: Format) -> io::Result<()> {
    match format {
        Format::Json => json(w, e),
        Format::Csv => csv(w, std::slice::from_ref(e)),
        Format::Table => {
            match &e.x {
                Some(x) => writeln!(w, "{} at x = {}, {} terms", e.target, x, e.terms)?,
                None => writeln!(w, "{}, {} terms", e.target, e.terms)?,
            }
            writeln!(w, "partial sum  {}", e.partial_sum)?;
            if let (Some(c), Some(d)) = (&e.closed_form, &e.difference) {
                writeln!(w, "closed form  {c}")?;
                writeln!(w, "difference   {d}")?;
            }
            if let Some(n) = &e.note {
                writeln!(w, "note: {n}")?;
            }
            Ok(())
        }
    }
}

pub fn constant_rows(w: &mut dyn Write, rows: &[Constant], format: Format) -> io::Result<()> {
    match format {
        Format::Json => json(w, rows),
        Format::Csv => csv(w, rows),
        Format::Table => {
            for r in rows {
                writeln!(w, "{:<9} = {}", r.name, r.value)?;
            }
            Ok(())
        }
    }
}
