//! The `rdh` command line: embed, extract, capacity, compare, verify.
//!
//! Output is `key=value` lines on stdout. Exit codes: 0 ok, 1 usage or I/O,
//! 2 capacity exceeded, 3 integrity failure, 4 verification failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bits::BitPayload;
use crate::codec::{BlockCodec, CodecId};
use crate::error::Error;
use crate::image::BlockGeometry;
use crate::io::{format_psnr, load_pgm, read_metadata, save_pgm, write_capacity_csv, write_metadata};
use crate::metrics::psnr;
use crate::oracle::{exhaustive_block_check, randomized_block_check, CheckReport, SwappedDecodeTable};
use crate::pipeline::{
    build_location_map, capacity, capacity_with_map, embed_image, extract_image, sweep_block_sizes, CapacityReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_INTEGRITY: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "rdh", version, about = "Reversible data hiding with pixel-value-ordering codecs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hide a payload in a PGM carrier.
    Embed(EmbedArgs),
    /// Recover the payload and the original carrier.
    Extract(ExtractArgs),
    /// Report the maximum capacity of one codec.
    Capacity(CapacityArgs),
    /// Capacity of all four codecs as CSV.
    Compare(CompareArgs),
    /// Run the round-trip verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct EmbedArgs {
    #[arg(long)]
    codec: CodecId,
    #[arg(long, default_value = "2x2")]
    block: BlockGeometry,
    #[arg(long)]
    input: PathBuf,
    /// File whose bytes are embedded, MSB-first.
    #[arg(long, conflicts_with = "random_bits", required_unless_present = "random_bits")]
    payload: Option<PathBuf>,
    /// Embed this many pseudo-random bits instead of a file.
    #[arg(long)]
    random_bits: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: PathBuf,
    #[arg(long)]
    meta: PathBuf,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    meta: PathBuf,
    #[arg(long)]
    payload_out: PathBuf,
    #[arg(long)]
    restored: PathBuf,
}

#[derive(Debug, Args)]
struct CapacityArgs {
    #[arg(long)]
    codec: CodecId,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "2x2")]
    block: BlockGeometry,
    /// Try the default candidate geometries and report the best.
    #[arg(long)]
    sweep: bool,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "2x2")]
    block: BlockGeometry,
    /// Image name for the CSV; defaults to the lowercased file stem.
    #[arg(long)]
    label: Option<String>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Enumerate all 2x2 blocks over 0..=5 (and 2x3 over 0..=4 for PPVOK).
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Randomized cases per codec.
    #[arg(long, default_value_t = 10_000)]
    cases: usize,
    /// Swap the PPVOK all-zero/all-one decode branches (harness self-test).
    #[arg(long, hide = true)]
    inject_fault: bool,
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapacityExceeded { .. } => EXIT_CAPACITY,
            Error::Integrity { .. } | Error::MalformedBlock { .. } => EXIT_INTEGRITY,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Embed(a) => cmd_embed(a, out),
        Command::Extract(a) => cmd_extract(a, out),
        Command::Capacity(a) => cmd_capacity(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn io_fail(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    }
}

fn cmd_embed(a: EmbedArgs, out: &mut dyn Write) -> CmdResult {
    let carrier = load_pgm(&a.input).map_err(|e| io_fail(&a.input, e))?;
    let payload = match (&a.payload, a.random_bits) {
        (Some(path), _) => BitPayload::from_bytes(&std::fs::read(path).map_err(|e| io_fail(path, e))?),
        (None, Some(n)) => {
            // reject before materializing an oversized request
            let map = build_location_map(&carrier, a.block, a.codec)?;
            let cap = capacity_with_map(&carrier, a.codec, a.block, &map)?;
            if n > cap {
                return Err(Error::CapacityExceeded {
                    requested: n,
                    capacity: cap,
                }
                .into());
            }
            BitPayload::random(n, a.seed)
        }
        (None, None) => unreachable!("clap requires one payload source"),
    };
    let (stego, meta) = embed_image(&carrier, &payload, a.codec, a.block)?;
    save_pgm(&a.output, &stego).map_err(|e| io_fail(&a.output, e))?;
    std::fs::write(&a.meta, write_metadata(&meta)).map_err(|e| io_fail(&a.meta, e))?;
    let _ = writeln!(out, "codec={}", a.codec);
    let _ = writeln!(out, "block={}", a.block);
    let _ = writeln!(out, "embedded={}", payload.len());
    let _ = writeln!(out, "processed_blocks={}", meta.processed_block_count);
    let _ = writeln!(out, "excluded_blocks={}", meta.location_map.excluded_count());
    let _ = writeln!(out, "psnr={}", format_psnr(psnr(&carrier, &stego)?));
    Ok(EXIT_OK)
}

fn cmd_extract(a: ExtractArgs, out: &mut dyn Write) -> CmdResult {
    let stego = load_pgm(&a.input).map_err(|e| io_fail(&a.input, e))?;
    let text = std::fs::read_to_string(&a.meta).map_err(|e| io_fail(&a.meta, e))?;
    let meta = read_metadata(&text).map_err(|e| io_fail(&a.meta, e))?;
    let (restored, payload) = extract_image(&stego, &meta)?;
    std::fs::write(&a.payload_out, payload.to_bytes()).map_err(|e| io_fail(&a.payload_out, e))?;
    save_pgm(&a.restored, &restored).map_err(|e| io_fail(&a.restored, e))?;
    let _ = writeln!(out, "extracted={}", payload.len());
    let _ = writeln!(out, "checksum={:016x}", restored.checksum());
    let _ = writeln!(out, "integrity=ok");
    Ok(EXIT_OK)
}

fn print_report(out: &mut dyn Write, r: &CapacityReport) {
    let _ = writeln!(out, "codec={}", r.codec);
    let _ = writeln!(out, "block={}", r.geometry);
    let _ = writeln!(out, "capacity={}", r.capacity_bits);
    let _ = writeln!(out, "eligible_blocks={}", r.eligible_blocks);
    let _ = writeln!(out, "excluded_blocks={}", r.excluded_blocks);
    let _ = writeln!(out, "psnr={}", format_psnr(r.psnr_at_max));
}

fn cmd_capacity(a: CapacityArgs, out: &mut dyn Write) -> CmdResult {
    let image = load_pgm(&a.input).map_err(|e| io_fail(&a.input, e))?;
    if a.sweep {
        let sweep = sweep_block_sizes(&image, a.codec, &BlockGeometry::default_candidates())?;
        for r in &sweep.reports {
            let _ = writeln!(out, "sweep.{}={}", r.geometry, r.capacity_bits);
        }
        print_report(out, sweep.best_report());
    } else {
        print_report(out, &capacity(&image, a.codec, a.block)?);
    }
    Ok(EXIT_OK)
}

fn image_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().to_lowercase())
        .unwrap_or_else(|| "image".into())
}

fn cmd_compare(a: CompareArgs, out: &mut dyn Write) -> CmdResult {
    let image = load_pgm(&a.input).map_err(|e| io_fail(&a.input, e))?;
    let label = a.label.clone().unwrap_or_else(|| image_label(&a.input));
    let reports = CodecId::ALL
        .iter()
        .map(|&c| capacity(&image, c, a.block).map(|r| r.with_image(label.clone())))
        .collect::<crate::error::Result<Vec<_>>>()?;
    let csv = write_capacity_csv(&reports)?;
    if let Some(path) = &a.csv {
        std::fs::write(path, &csv).map_err(|e| io_fail(path, e))?;
    }
    let _ = write!(out, "{csv}");
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let codec_for = |id: CodecId| -> &'static dyn BlockCodec {
        if a.inject_fault && id == CodecId::Ppvok {
            &SwappedDecodeTable
        } else {
            id.codec()
        }
    };
    let mut reports: Vec<(&str, CheckReport)> = Vec::new();
    for id in CodecId::ALL {
        let c = codec_for(id);
        reports.push(("random", randomized_block_check(c, a.cases, a.seed)));
        if a.exhaustive {
            reports.push(("exhaustive-2x2", exhaustive_block_check(c, 4, 6)));
            if id == CodecId::Ppvok {
                reports.push(("exhaustive-2x3", exhaustive_block_check(c, 6, 5)));
            }
        } else {
            reports.push(("exhaustive-2x2-small", exhaustive_block_check(c, 4, 4)));
        }
    }
    let mut first_failure = None;
    for (mode, r) in &reports {
        let _ = writeln!(
            out,
            "verify codec={} mode={mode} cases={} failures={}",
            r.codec, r.cases, r.failure_count
        );
        if first_failure.is_none() {
            first_failure = r.failures.first().cloned();
        }
    }
    match first_failure {
        None => {
            let _ = writeln!(out, "result=pass");
            Ok(EXIT_OK)
        }
        Some(cx) => {
            let _ = writeln!(out, "counterexample={cx}");
            let _ = writeln!(out, "result=fail");
            Ok(EXIT_VERIFY)
        }
    }
}
