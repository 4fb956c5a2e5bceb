use std::fmt::Write as _;

use crate::pipeline::SpecReport;
use crate::tables::{LiteratureRow, PartitionRow, SummaryRow};

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn sizes(r: &SpecReport) -> String {
    r.spec.m().iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn spec_cells(table: &str, label: &str, r: &SpecReport, timings: bool) -> String {
    let (status, iterations) = r
        .sdp
        .as_ref()
        .map_or((String::from("skipped"), String::new()), |s| (s.status.clone(), s.iterations.to_string()));
    let status = if r.failed() { String::from("failed") } else { status };
    let safe = r.lower_bound.as_ref().map(|b| b.safe);
    let mut line = format!(
        "{table},{label},{},{},{},{},{:.4},{status},{iterations},{},{},{}",
        r.spec.k(),
        r.spec.r(),
        sizes(r),
        r.ub,
        r.lb,
        opt(r.bdw_geq()),
        opt(r.upper_bound.as_ref().map(|b| b.value)),
        opt(safe),
    );
    if timings {
        let _ = write!(line, ",{:.2}", r.seconds.unwrap_or(0.0));
    }
    line
}

fn spec_header(timings: bool) -> String {
    let mut h = String::from("table,graph,k,r,m,ub,lb,status,iterations,bdw_geq,bdw_leq,safe");
    if timings {
        h.push_str(",seconds");
    }
    h
}

pub fn spec_reports_csv(reports: &[SpecReport], timings: bool) -> String {
    let mut out = spec_header(timings);
    out.push('\n');
    for r in reports {
        out.push_str(&spec_cells("bound", &r.graph, r, timings));
        out.push('\n');
    }
    out
}

pub fn partition_rows_csv(rows: &[PartitionRow], timings: bool) -> String {
    let mut out = spec_header(timings);
    out.push('\n');
    for row in rows {
        out.push_str(&spec_cells(&row.table, &row.label, &row.report, timings));
        out.push('\n');
    }
    out
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from("k,n,torus_bdw_geq,torus_ham_bdw_geq,bdw_leq\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{},{}", r.k, r.n, opt(r.torus_geq), opt(r.torus_ham_geq), r.leq);
    }
    out
}

pub fn literature_csv(rows: &[LiteratureRow], ks: &[usize]) -> String {
    let mut out = String::from("graph,n,edges,bdw_leq,bdw_dens,spectral_geq");
    for k in ks {
        let _ = write!(out, ",k{k}");
    }
    out.push('\n');
    for r in rows {
        let _ = write!(
            out,
            "{},{},{},{},{},{}",
            r.name,
            r.n,
            r.edges,
            r.leq,
            opt(r.density.map(|d| format!("{d:.3}"))),
            r.spectral_geq
        );
        for cell in &r.cells {
            let _ = write!(out, ",{}", opt(cell.bdw_geq));
        }
        out.push('\n');
    }
    out
}
