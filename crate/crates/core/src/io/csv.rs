use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pipeline::CapacityReport;

pub const CSV_HEADER: &str = "algorithm,image,block,capacity_bits,psnr_db";

/// `inf` for lossless results, otherwise four decimals.
pub fn format_psnr(db: f64) -> String {
    if db.is_infinite() {
        "inf".to_string()
    } else {
        format!("{db:.4}")
    }
}

/// One row per report, in input order, Unix line endings.
pub fn write_capacity_csv(reports: &[CapacityReport]) -> Result<String> {
    if reports.is_empty() {
        return Err(Error::Report("no capacity reports to write".into()));
    }
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.codec.name(),
            r.image,
            r.geometry,
            r.capacity_bits,
            format_psnr(r.psnr_at_max)
        );
    }
    Ok(out)
}
