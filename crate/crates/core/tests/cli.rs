use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rdh::io::{load_pgm, save_pgm};
use rdh::{synth, GrayImage};

fn rdh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdh")).args(args).output().expect("spawn rdh")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Scratch {
    dir: tempfile::TempDir,
}

impl Scratch {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn s(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }

    fn image(&self, name: &str, img: &GrayImage) -> String {
        save_pgm(self.path(name), img).unwrap();
        self.s(name)
    }
}

fn embed_random(s: &Scratch, input: &str, codec: &str, bits: &str) -> Output {
    rdh(&[
        "embed", "--codec", codec, "--input", input, "--random-bits", bits, "--seed", "7",
        "--output", &s.s("stego.pgm"), "--meta", &s.s("stego.meta"),
    ])
}

#[test]
fn embed_then_extract_random_bits() {
    let s = Scratch::new();
    let input = s.image("smooth.pgm", &synth::gradient_plateau(128, 128));
    let out = embed_random(&s, &input, "ppvok", "1000");
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).lines().any(|l| l == "embedded=1000"));
    assert!(stdout(&out).lines().any(|l| l.starts_with("psnr=")));

    let out = rdh(&[
        "extract", "--input", &s.s("stego.pgm"), "--meta", &s.s("stego.meta"),
        "--payload-out", &s.s("payload.bin"), "--restored", &s.s("restored.pgm"),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).lines().any(|l| l == "extracted=1000"));
    assert_eq!(load_pgm(s.path("restored.pgm")).unwrap(), load_pgm(&input).unwrap());
    let bytes = std::fs::read(s.path("payload.bin")).unwrap();
    assert_eq!(bytes, rdh::BitPayload::random(1000, 7).to_bytes());
}

#[test]
fn payload_file_round_trips_bytes() {
    let s = Scratch::new();
    let input = s.image("carrier.pgm", &synth::smooth_random(96, 96, 4));
    std::fs::write(s.path("secret.bin"), b"hi!").unwrap();
    for codec in ["pvo", "ipvo", "pvok", "ppvok"] {
        let out = rdh(&[
            "embed", "--codec", codec, "--block", "2x2", "--input", &input,
            "--payload", &s.s("secret.bin"), "--output", &s.s("st.pgm"), "--meta", &s.s("st.meta"),
        ]);
        assert_eq!(out.status.code(), Some(0), "{codec}: {}", stderr(&out));
        let out = rdh(&[
            "extract", "--input", &s.s("st.pgm"), "--meta", &s.s("st.meta"),
            "--payload-out", &s.s("out.bin"), "--restored", &s.s("rest.pgm"),
        ]);
        assert_eq!(out.status.code(), Some(0), "{codec}: {}", stderr(&out));
        assert_eq!(std::fs::read(s.path("out.bin")).unwrap(), b"hi!");
        assert_eq!(std::fs::read(s.path("rest.pgm")).unwrap(), std::fs::read(&input).unwrap());
    }
}

#[test]
fn capacity_exceeded_exits_2() {
    let s = Scratch::new();
    let input = s.image("smooth.pgm", &synth::gradient_plateau(64, 64));
    let out = embed_random(&s, &input, "ppvok", "1000000000");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("capacity="), "{}", stderr(&out));
}

#[test]
fn missing_input_exits_1_with_usage() {
    let s = Scratch::new();
    let out = rdh(&["embed", "--codec", "pvo", "--random-bits", "8", "--output", &s.s("o"), "--meta", &s.s("m")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("Usage"), "{}", stderr(&out));
    let out = rdh(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unreadable_input_exits_1() {
    let s = Scratch::new();
    std::fs::write(s.path("bad.pgm"), b"P6\n1 1\n255\n\0\0\0").unwrap();
    let out = embed_random(&s, &s.s("bad.pgm"), "pvo", "1");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unsupported magic"));
}

fn embed_and_tamper(s: &Scratch) {
    let input = s.image("c.pgm", &synth::smooth_random(64, 64, 9));
    let out = embed_random(s, &input, "ipvo", "50");
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn tampered_stego_exits_3() {
    let s = Scratch::new();
    embed_and_tamper(&s);
    let mut stego = load_pgm(s.path("stego.pgm")).unwrap();
    // a pixel in the last block row, well past the processed prefix
    let v = stego.get(10, 63);
    stego.set(10, 63, v ^ 1);
    save_pgm(s.path("stego.pgm"), &stego).unwrap();
    let out = rdh(&[
        "extract", "--input", &s.s("stego.pgm"), "--meta", &s.s("stego.meta"),
        "--payload-out", &s.s("p"), "--restored", &s.s("r.pgm"),
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("integrity"));
}

#[test]
fn metadata_for_another_image_exits_1() {
    let s = Scratch::new();
    embed_and_tamper(&s);
    let other = s.image("other.pgm", &synth::smooth_random(32, 64, 1));
    let out = rdh(&[
        "extract", "--input", &other, "--meta", &s.s("stego.meta"),
        "--payload-out", &s.s("p"), "--restored", &s.s("r.pgm"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("dimension mismatch"));
}

#[test]
fn compare_emits_four_rows() {
    let s = Scratch::new();
    let input = s.image("Smooth.pgm", &synth::gradient_plateau(256, 256));
    let out = rdh(&["compare", "--input", &input, "--csv", &s.s("table.csv")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = std::fs::read_to_string(s.path("table.csv")).unwrap();
    assert_eq!(csv, stdout(&out));
    let rows: Vec<Vec<String>> = csv.lines().map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows[0].join(","), "algorithm,image,block,capacity_bits,psnr_db");
    assert_eq!(rows.len(), 5);
    let names: Vec<&str> = rows[1..].iter().map(|r| r[0].as_str()).collect();
    assert_eq!(names, ["PVO", "IPVO", "PVOK", "PPVOK"]);
    assert!(rows[1..].iter().all(|r| r[1] == "smooth" && r[2] == "2x2"));
    let caps: Vec<usize> = rows[1..].iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(caps[3] > caps[0] && caps[3] > caps[1] && caps[3] > caps[2], "{caps:?}");
}

fn key(out: &str, k: &str) -> Option<String> {
    out.lines().find_map(|l| l.strip_prefix(&format!("{k}=")).map(String::from))
}

#[test]
fn capacity_sweep_on_constant_image() {
    let s = Scratch::new();
    let input = s.image("flat.pgm", &GrayImage::filled(64, 64, 128).unwrap());
    let out = rdh(&["capacity", "--codec", "ppvok", "--input", &input, "--sweep"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(key(&text, "capacity").as_deref(), Some("0"));
    assert_eq!(key(&text, "block").as_deref(), Some("2x2"));
    assert_eq!(key(&text, "psnr").as_deref(), Some("inf"));
    assert_eq!(text.lines().filter(|l| l.starts_with("sweep.")).count(), 5);
}

#[test]
fn capacity_single_geometry() {
    let s = Scratch::new();
    let img = synth::gradient_plateau(64, 64);
    let input = s.image("g.pgm", &img);
    let out = rdh(&["capacity", "--codec", "pvok", "--input", &input, "--block", "3x3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let want = rdh::capacity(&img, rdh::CodecId::Pvok, rdh::BlockGeometry::new(3, 3).unwrap()).unwrap();
    assert_eq!(key(&stdout(&out), "capacity"), Some(want.capacity_bits.to_string()));
}

#[test]
fn verify_default_passes() {
    let out = rdh(&["verify", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    let random: Vec<&str> = text.lines().filter(|l| l.contains("mode=random")).collect();
    assert_eq!(random.len(), 4);
    for line in random {
        let cases: usize = line.split_whitespace().find_map(|t| t.strip_prefix("cases=")).unwrap().parse().unwrap();
        assert!(cases >= 10_000);
    }
    assert!(text.contains("result=pass"));
}

#[test]
fn verify_exhaustive_passes() {
    let out = rdh(&["verify", "--exhaustive", "--cases", "100"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("mode=exhaustive-2x3"));
}

#[test]
fn verify_reports_injected_fault() {
    let out = rdh(&["verify", "--inject-fault", "--cases", "2000"]);
    assert_eq!(out.status.code(), Some(4));
    let text = stdout(&out);
    assert!(text.contains("counterexample=codec=PPVOK"), "{text}");
    assert!(text.contains("result=fail"));
}

#[test]
fn help_lists_subcommands() {
    let out = rdh(&["--help"]);
    let text = stdout(&out);
    for cmd in ["embed", "extract", "capacity", "compare", "verify"] {
        assert!(text.contains(cmd));
    }
    let _ = Path::new("");
}
