//! File formats: PGM carriers, the metadata sidecar, and capacity CSV reports.

mod csv;
mod metadata;
mod pgm;

pub use self::csv::{format_psnr, write_capacity_csv, CSV_HEADER};
pub use self::metadata::{locmap_from_hex, locmap_to_hex, read_metadata, write_metadata, METADATA_VERSION};
pub use self::pgm::{load_pgm, read_pgm, save_pgm, write_pgm};
