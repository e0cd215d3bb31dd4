//! The seven figure grids and their CSV output.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use qdl_core::Scenario;

use crate::error::{CliError, Result};
use crate::sweep::{Axis, Metric, Param, SweepSpec};

pub const DEFAULT_RESOLUTION: usize = 41;
pub const MIN_RESOLUTION: usize = 11;

pub fn figure_spec(n: u8, resolution: usize) -> Result<SweepSpec> {
    if resolution < MIN_RESOLUTION {
        return Err(CliError::Usage(format!(
            "resolution must be at least {MIN_RESOLUTION}, got {resolution}"
        )));
    }
    let axes = |a: Param, b: Param| vec![Axis::unit(a, resolution), Axis::unit(b, resolution)];
    let (scenario, axes, outputs) = match n {
        1 => (Scenario::Free, axes(Param::D, Param::U), vec![Metric::BMax]),
        2 => (
            Scenario::SystemDecoherence,
            axes(Param::O, Param::R),
            vec![Metric::BMax],
        ),
        3 => (
            Scenario::SystemDecoherence,
            axes(Param::D, Param::R),
            vec![Metric::Visibility, Metric::LrtExplainable],
        ),
        4 => (
            Scenario::SystemDecoherence,
            axes(Param::D, Param::R),
            vec![Metric::MutualInformation, Metric::ChshViolating],
        ),
        5 => (
            Scenario::MeterDecoherence,
            axes(Param::R, Param::D),
            vec![Metric::BMax],
        ),
        6 => (
            Scenario::MeterDecoherence,
            axes(Param::D, Param::R),
            vec![Metric::MutualInformation, Metric::ChshViolating],
        ),
        7 => (
            Scenario::Combined,
            axes(Param::RS, Param::RM),
            vec![Metric::DThreshold],
        ),
        other => {
            return Err(CliError::Usage(format!(
                "figure must be 1..=7, got {other}"
            )))
        }
    };
    Ok(SweepSpec {
        scenario,
        axes,
        fixed: vec![],
        outputs,
    })
}

pub fn write_csv<W: Write>(spec: &SweepSpec, out: W) -> Result<()> {
    let rows = spec.evaluate()?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(spec.header())?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_figure(n: u8, resolution: usize, path: &Path) -> Result<usize> {
    let spec = figure_spec(n, resolution)?;
    let file = File::create(path)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    write_csv(&spec, BufWriter::new(file))?;
    Ok(spec.points().len())
}
