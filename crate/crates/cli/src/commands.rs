//! Table, nu-invariant, covering and polygon reports.

use std::io::Write;
use std::path::Path;

use etcs_blocks::Catalog;
use etcs_etafn::nu_bar_analytic;
use etcs_gluing::{derive_eps_minus, GluingData, Matrix};
use etcs_hypgeo::{build_polygon, polygon_identity_check, write_polygon_svg};
use etcs_matching::{cover_row, enumerate_examples, find_row, EtcsExample};
use etcs_nu::{nu_bar_exact, nu_mod48, NuBreakdown};
use etcs_ratarith::{to_f64, Rational};

use crate::{fraction_string, CliError, RowFilter, TableRow, TABLE_COLUMNS};

/// Machine-readable table formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

fn math_error(e: impl std::fmt::Display) -> CliError {
    CliError::InvalidInput(e.to_string())
}

fn build_table(catalog: &Catalog, workers: usize) -> Result<Vec<EtcsExample>, CliError> {
    enumerate_examples(catalog, workers).map_err(math_error)
}

fn row(table: &[EtcsExample], row_id: usize) -> Result<&EtcsExample, CliError> {
    row_id
        .checked_sub(1)
        .and_then(|i| table.get(i))
        .ok_or_else(|| {
            CliError::InvalidInput(format!("row {row_id} is not in 1..={}", table.len()))
        })
}

/// Writes the (filtered) table and returns the number of rows written.
pub fn cmd_enumerate(
    catalog: &Catalog,
    format: OutputFormat,
    filter: &RowFilter,
    workers: usize,
    out: &mut dyn Write,
) -> Result<usize, CliError> {
    let rows: Vec<TableRow> = build_table(catalog, workers)?
        .iter()
        .map(TableRow::from)
        .filter(|r| filter.matches(r))
        .collect();
    match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(out);
            w.write_record(TABLE_COLUMNS)
                .map_err(|e| CliError::Config(e.to_string()))?;
            for r in &rows {
                w.serialize(r)
                    .map_err(|e| CliError::Config(e.to_string()))?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)
                .map_err(|e| CliError::Config(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(rows.len())
}

/// Gluing data and fixpoint contributions given directly on the command
/// line; `k-` and `eps-` are derived.
#[derive(Debug, Clone, PartialEq)]
pub struct GluingInput {
    pub matrix: Matrix,
    pub k_plus: i64,
    pub eps_plus: i64,
    pub d_plus: Rational,
    pub d_minus: Rational,
    pub m_rho: i64,
}

/// What `nu` reports on.
#[derive(Debug, Clone, PartialEq)]
pub enum NuRequest {
    Row(usize),
    Gluing(GluingInput),
}

fn write_breakdown(out: &mut dyn Write, g: &GluingData, b: &NuBreakdown) -> Result<(), CliError> {
    let nu = nu_mod48(b.nu_bar_int(), 0);
    writeln!(out, "gluing       {g}")?;
    writeln!(out, "D+           {}", fraction_string(&b.d_plus))?;
    writeln!(out, "D-           {}", fraction_string(&b.d_minus))?;
    writeln!(out, "3 m_rho      {}", b.m_rho_term)?;
    writeln!(out, "A            {}", b.a)?;
    writeln!(out, "S(A, n)      {}", fraction_string(&b.dedekind_sum))?;
    writeln!(out, "sum term     {}", fraction_string(&b.dedekind_term))?;
    writeln!(out, "nu_bar       {}", b.nu_bar_int())?;
    writeln!(out, "nu mod 48    {}", nu.residue)?;
    writeln!(out, "nullbordant  {}", nu.nullbordant)?;
    Ok(())
}

/// Prints the exact breakdown of `nu_bar`; with `cross_check` also the
/// value from eta functions, failing when they differ by more than the
/// tolerance.
pub fn cmd_nu(
    catalog: &Catalog,
    request: &NuRequest,
    cross_check: Option<f64>,
    workers: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (g, breakdown, m_rho) = match request {
        NuRequest::Row(id) => {
            let table = build_table(catalog, workers)?;
            let ex = row(&table, *id)?;
            writeln!(out, "row          {id}")?;
            writeln!(out, "blocks       {} {}", ex.z_plus, ex.z_minus)?;
            (ex.gluing, ex.breakdown.clone(), ex.m_rho)
        }
        NuRequest::Gluing(input) => {
            let (k_minus, eps_minus) =
                derive_eps_minus(input.k_plus, input.eps_plus, input.matrix).map_err(math_error)?;
            let g = GluingData::new(
                input.k_plus,
                k_minus,
                input.eps_plus,
                eps_minus,
                input.matrix,
            )
            .map_err(math_error)?;
            g.validate().into_result().map_err(math_error)?;
            let b =
                nu_bar_exact(&g, &input.d_plus, &input.d_minus, input.m_rho).map_err(math_error)?;
            (g, b, input.m_rho)
        }
    };
    write_breakdown(out, &g, &breakdown)?;
    if let Some(tol) = cross_check {
        if !(tol > 0.0) {
            return Err(CliError::Config(format!(
                "tolerance {tol} must be positive"
            )));
        }
        let eta_tol = (tol / 10.0).min(1e-9);
        let analytic = nu_bar_analytic(&g, &breakdown.d_plus, &breakdown.d_minus, m_rho, eta_tol)
            .map_err(math_error)?;
        let delta = (analytic - to_f64(&breakdown.nu_bar)).abs();
        writeln!(out, "analytic     {analytic:.12}")?;
        writeln!(out, "delta        {delta:.3e}")?;
        if delta > tol {
            writeln!(out, "FAIL cross-check tolerance {tol:e}")?;
            return Err(CliError::Verification { failed: 1 });
        }
        writeln!(out, "PASS cross-check tolerance {tol:e}")?;
    }
    Ok(())
}

fn describe_match(
    out: &mut dyn Write,
    found: Option<etcs_matching::RowMatch>,
) -> Result<(), CliError> {
    match found {
        Some(m) if m.swapped => writeln!(out, "matches      row {} (sides swapped)", m.row_id)?,
        Some(m) => writeln!(out, "matches      row {}", m.row_id)?,
        None => writeln!(out, "matches      none")?,
    }
    Ok(())
}

/// The `ell`-fold covering of a row and the row it matches.
pub fn cmd_cover(
    catalog: &Catalog,
    row_id: usize,
    ell: i64,
    workers: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let table = build_table(catalog, workers)?;
    let ex = row(&table, row_id)?;
    let edge = cover_row(&table, catalog, ex, ell).map_err(math_error)?;
    writeln!(out, "row          {row_id}")?;
    writeln!(out, "degree       {ell}")?;
    writeln!(out, "cover        {}", edge.data)?;
    match edge.blocks {
        Some((zp, zm)) => writeln!(out, "blocks       {zp} {zm}")?,
        None => writeln!(out, "blocks       not in catalog")?,
    }
    describe_match(out, edge.to)
}

/// The t-dual of a row and the row it matches.
pub fn cmd_tdual(
    catalog: &Catalog,
    row_id: usize,
    workers: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let table = build_table(catalog, workers)?;
    let ex = row(&table, row_id)?;
    let dual = ex.gluing.t_dual();
    writeln!(out, "row          {row_id}")?;
    writeln!(out, "t-dual       {dual}")?;
    writeln!(out, "blocks       {} {}", ex.z_plus, ex.z_minus)?;
    describe_match(out, find_row(&table, &dual, ex.z_plus, ex.z_minus))
}

/// The ideal polygon of a row, its cusp-angle identity, and optionally an
/// SVG drawing.
pub fn cmd_polygon(
    catalog: &Catalog,
    row_id: usize,
    svg: Option<&Path>,
    workers: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let table = build_table(catalog, workers)?;
    let ex = row(&table, row_id)?;
    let poly = build_polygon(&ex.gluing).map_err(math_error)?;
    let id = polygon_identity_check(&ex.gluing).map_err(math_error)?;
    let list = |cs: &[etcs_hypgeo::CuspPoint]| {
        cs.iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    writeln!(out, "row          {row_id}")?;
    writeln!(out, "gluing       {}", ex.gluing)?;
    writeln!(out, "digits       {:?}", poly.digits)?;
    writeln!(out, "corners P'   {}", list(&poly.picture_prime.corners))?;
    writeln!(out, "corners P    {}", list(&poly.picture.corners))?;
    writeln!(out, "cusp sum     {}", fraction_string(&id.cusp_angle_sum))?;
    writeln!(out, "lhs          {}", fraction_string(&id.lhs))?;
    writeln!(out, "rhs          {}", fraction_string(&id.rhs))?;
    writeln!(
        out,
        "b'_1         {} (expected {} mod {})",
        id.b1_prime, id.congruence_target, ex.gluing.matrix.n
    )?;
    if let Some(path) = svg {
        write_polygon_svg(&poly, path)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
        writeln!(out, "svg          {}", path.display())?;
    }
    if id.pass && id.congruence_holds {
        writeln!(out, "PASS polygon identity")?;
        Ok(())
    } else {
        writeln!(out, "FAIL polygon identity")?;
        Err(CliError::Verification { failed: 1 })
    }
}
