//! End-to-end tests against the built binary: golden output lines, exit
//! codes, machine-readable diagnostics and raster file contents.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blaschke"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Asserts the failure contract: given exit code, empty-or-ignored stdout and
/// a one-line JSON diagnostic with the given code on stderr.
fn assert_diagnostic(out: &Output, exit: i32, code: &str) {
    assert_eq!(out.status.code(), Some(exit), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let diag: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("stderr is one JSON object");
    assert_eq!(diag["code"], code, "diagnostic {diag}");
    assert!(diag["message"].is_string());
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("blaschke-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

struct Ppm {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl Ppm {
    fn load(path: &PathBuf) -> Self {
        let data = std::fs::read(path).unwrap();
        let mut parts = data.splitn(4, |&b| b == b'\n');
        assert_eq!(parts.next().unwrap(), b"P6");
        let dims = String::from_utf8(parts.next().unwrap().to_vec()).unwrap();
        let (w, h) = dims.split_once(' ').unwrap();
        assert_eq!(parts.next().unwrap(), b"255");
        let pixels = parts.next().unwrap().to_vec();
        let ppm = Ppm {
            width: w.parse().unwrap(),
            height: h.parse().unwrap(),
            pixels,
        };
        assert_eq!(ppm.pixels.len(), 3 * ppm.width * ppm.height);
        ppm
    }

    fn pixel(&self, row: usize, col: usize) -> [u8; 3] {
        let i = 3 * (row * self.width + col);
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }
}

const WHITE: [u8; 3] = [255, 255, 255];
const BLACK: [u8; 3] = [0, 0, 0];
const GRAY: [u8; 3] = [128, 128, 128];
const RED: [u8; 3] = [255, 0, 0];

#[test]
fn classify_golden_lines() {
    assert_eq!(
        stdout_of(&["classify", "--d", "2", "--w", "0"]),
        "{\"boundary_theta\":null,\"dw_point\":\"0+0i\",\"kind\":\"elliptic\",\
         \"multiplier\":\"0+0i\",\"region\":\"inside\"}\n"
    );
    assert_eq!(
        stdout_of(&["classify", "--d", "2", "--w", "-0.3333333333"]),
        "{\"boundary_theta\":0.0,\"dw_point\":\"1+0i\",\"kind\":\"parabolic\",\
         \"multiplier\":\"1.000000000075+0i\",\"region\":\"boundary\"}\n"
    );
    assert_eq!(
        stdout_of(&["classify", "--d", "2", "--w", "-0.5"]),
        "{\"boundary_theta\":null,\"dw_point\":\"1+0i\",\"kind\":\"hyperbolic\",\
         \"multiplier\":\"0.6666666666666666+0i\",\"region\":\"outside\"}\n"
    );
}

#[test]
fn classify_rejects_bad_input() {
    assert_diagnostic(&run(&["classify", "--d", "1", "--w", "0"]), 2, "domain");
    assert_diagnostic(&run(&["classify", "--d", "2", "--w", "abc"]), 2, "parse");
    assert_diagnostic(&run(&["classify", "--d", "2", "--w", "1++2i"]), 2, "parse");
    assert_diagnostic(&run(&["classify", "--d", "2", "--w", "1.5"]), 2, "domain");
}

#[test]
fn band_tolerance_widens_the_boundary_verdict() {
    // -0.335 sits about 1.2e-4 from the curve: outside the default band,
    // inside a loosened one
    let tight: serde_json::Value =
        serde_json::from_str(&stdout_of(&["classify", "--d", "2", "--w", "-0.335"])).unwrap();
    assert_eq!(tight["region"], "outside");
    assert_eq!(tight["kind"], "hyperbolic");

    let loose: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "--tol-boundary",
        "1e-3",
        "classify",
        "--d",
        "2",
        "--w",
        "-0.335",
    ]))
    .unwrap();
    assert_eq!(loose["region"], "boundary");
    assert_eq!(loose["kind"], "parabolic");
}

#[test]
fn parabolic_tolerance_alone_surfaces_the_cross_check() {
    // widening only the multiplier tolerance makes the dynamics call -0.335
    // parabolic while membership still says outside; the disagreement is a
    // reported failure, not a silent pick
    let out = run(&["--tol-parabolic", "1e-2", "classify", "--d", "2", "--w", "-0.335"]);
    assert_diagnostic(&out, 3, "inconsistent-classification");
}

#[test]
fn rejects_nonpositive_tolerances() {
    assert_diagnostic(&run(&["--tol-boundary", "0", "classify", "--d", "2", "--w", "0"]), 2, "usage");
    assert_diagnostic(&run(&["--tol-parabolic", "-1e-9", "classify", "--d", "2", "--w", "0"]), 2, "usage");
}

#[test]
fn argument_errors_are_json_too() {
    assert_diagnostic(&run(&["classify", "--d", "2", "--w", "0", "--bogus"]), 2, "usage");
    assert_diagnostic(&run(&["classify", "--w", "0"]), 2, "usage");
    assert_diagnostic(&run(&[]), 2, "usage");

    // help is not an error and keeps clap's plain-text report
    let help = run(&["--help"]);
    assert!(help.status.success());
    assert!(String::from_utf8(help.stdout).unwrap().contains("Usage:"));
}

#[test]
fn lambda_golden_lines() {
    assert_eq!(
        stdout_of(&["lambda", "--u", "0", "--w", "0.8"]),
        "{\"c\":\"0.5000000000000001+0i\",\"conjugator\":{\"a\":\"0.6666666666666667+0i\",\
         \"b\":\"0.1666666666666663+0i\",\"c\":\"0.1666666666666663+0i\",\
         \"d\":\"0.6666666666666667+0i\"},\"kind\":\"elliptic\",\
         \"lambda\":\"0.6666666666666664+0i\",\"residual\":1.3426356273935429e-15,\
         \"u\":\"0+0i\",\"w\":\"0.8+0i\"}\n"
    );
    assert_eq!(
        stdout_of(&["lambda", "--u", "0.5i", "--w", "-0.5i"]),
        "{\"c\":\"0+0i\",\"conjugator\":{\"a\":\"1+0i\",\"b\":\"-0.25+0i\",\"c\":\"-0.25+0i\",\
         \"d\":\"1+0i\"},\"kind\":\"elliptic\",\"lambda\":\"-0.25+0i\",\
         \"residual\":7.850462293418876e-16,\"u\":\"0+0.5i\",\"w\":\"0-0.5i\"}\n"
    );
    // coincident zeros short-circuit to the identity conjugator
    assert_eq!(
        stdout_of(&["lambda", "--u", "0.3", "--w", "0.3"]),
        "{\"c\":\"0.29999999999999993+0i\",\"conjugator\":{\"a\":\"1+0i\",\"b\":\"0+0i\",\
         \"c\":\"0+0i\",\"d\":\"1+0i\"},\"kind\":\"elliptic\",\"lambda\":\"0.3+0i\",\
         \"residual\":0.0,\"u\":\"0.3+0i\",\"w\":\"0.3+0i\"}\n"
    );
}

#[test]
fn epicycloid_golden_csv() {
    let dir = workdir("epicycloid");
    let out2 = dir.join("epi2.csv");
    stdout_of(&["--out", out2.to_str().unwrap(), "epicycloid", "--d", "2", "--samples", "4"]);
    assert_eq!(
        std::fs::read_to_string(&out2).unwrap(),
        "theta,re,im\n\
         0.0000000000000000e0,-3.3333333333333331e-1,0.0000000000000000e0\n\
         1.5707963267948966e0,-3.3333333333333343e-1,-6.6666666666666663e-1\n\
         3.1415926535897931e0,1.0000000000000000e0,-1.6328623988631375e-16\n\
         4.7123889803846897e0,-3.3333333333333320e-1,6.6666666666666685e-1\n"
    );

    let out3 = dir.join("epi3.csv");
    stdout_of(&["--out", out3.to_str().unwrap(), "epicycloid", "--d", "3", "--samples", "2"]);
    assert_eq!(
        std::fs::read_to_string(&out3).unwrap(),
        "theta,re,im\n\
         0.0000000000000000e0,-5.0000000000000000e-1,0.0000000000000000e0\n\
         3.1415926535897931e0,5.0000000000000000e-1,0.0000000000000000e0\n"
    );
}

#[test]
fn epicycloid_usage_errors() {
    assert_diagnostic(&run(&["epicycloid", "--d", "2", "--samples", "4"]), 2, "usage");
    let dir = workdir("epicycloid-usage");
    let path = dir.join("one.csv");
    assert_diagnostic(
        &run(&["--out", path.to_str().unwrap(), "epicycloid", "--d", "2", "--samples", "1"]),
        2,
        "usage",
    );
}

#[test]
fn julia_writes_sidecar_and_circle_samples() {
    let dir = workdir("julia");
    let csv = dir.join("squaring.csv");
    stdout_of(&["--out", csv.to_str().unwrap(), "julia", "--d", "2", "--w", "0", "--n", "50"]);

    let sidecar = std::fs::read_to_string(dir.join("squaring.csv.json")).unwrap();
    assert_eq!(
        sidecar.trim_end(),
        "{\"dw_point\":\"0+0i\",\"julia\":\"whole-circle\",\"kind\":\"elliptic\",\
         \"multiplier\":\"0+0i\",\"second_derivative\":null}"
    );

    let body = std::fs::read_to_string(&csv).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("re,im"));
    let mut rows = 0;
    for line in lines {
        let (re, im) = line.split_once(',').unwrap();
        let z = num_complex::Complex64::new(re.parse().unwrap(), im.parse().unwrap());
        assert!((z.norm() - 1.0).abs() < 1e-10, "sample {z} off the circle");
        rows += 1;
    }
    assert_eq!(rows, 50);
}

#[test]
fn julia_on_a_cusp_reports_the_degeneracy_but_keeps_the_verdict() {
    let dir = workdir("julia-cusp");
    let csv = dir.join("cusp.csv");
    let out = run(&[
        "--out",
        csv.to_str().unwrap(),
        "julia",
        "--d",
        "2",
        "--w",
        "-0.3333333333333333",
        "--n",
        "50",
    ]);
    assert_diagnostic(&out, 3, "no-repelling-fixed-point");

    // the classification sidecar and an empty sample table are still written
    let sidecar = std::fs::read_to_string(dir.join("cusp.csv.json")).unwrap();
    assert_eq!(
        sidecar.trim_end(),
        "{\"dw_point\":\"1+0i\",\"julia\":\"whole-circle\",\"kind\":\"parabolic\",\
         \"multiplier\":\"1+0i\",\"second_derivative\":\"0+0i\"}"
    );
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), "re,im\n");
}

#[test]
fn julia_sampling_is_seed_deterministic() {
    let dir = workdir("julia-seed");
    let first = dir.join("a.csv");
    let second = dir.join("b.csv");
    let third = dir.join("c.csv");
    for (path, seed) in [(&first, "9"), (&second, "9"), (&third, "10")] {
        stdout_of(&[
            "--seed",
            seed,
            "--out",
            path.to_str().unwrap(),
            "julia",
            "--d",
            "2",
            "--w",
            "-0.5",
            "--n",
            "80",
        ]);
    }
    let a = std::fs::read(&first).unwrap();
    assert_eq!(a, std::fs::read(&second).unwrap(), "same seed, same bytes");
    assert_ne!(a, std::fs::read(&third).unwrap(), "different seed, different orbit");
}

#[test]
fn render_real_shades_by_the_invariant() {
    let dir = workdir("render-real");
    let path = dir.join("plain.ppm");
    stdout_of(&["--out", path.to_str().unwrap(), "render-real", "--resolution", "200"]);
    let ppm = Ppm::load(&path);
    assert_eq!((ppm.width, ppm.height), (200, 200));
    // (u, w) = (0, 0.8) pairs to lambda = 2/3, whose shade rounds half away
    // from zero to 213
    assert_eq!(ppm.pixel(20, 100), [213, 213, 213]);
    // the u = w diagonal stays white when no level curve crosses it
    assert_eq!(ppm.pixel(100, 100), WHITE);
    assert_eq!(ppm.pixel(150, 50), WHITE);
}

#[test]
fn render_real_level_curve_crosses_the_diagonal_at_its_invariant() {
    let dir = workdir("render-real-curve");
    let path = dir.join("curve.ppm");
    stdout_of(&[
        "--out",
        path.to_str().unwrap(),
        "render-real",
        "--resolution",
        "200",
        "--lambdas",
        "-0.5",
    ]);
    let ppm = Ppm::load(&path);
    // the lambda = -0.5 curve meets u = w exactly at (-0.5, -0.5)
    assert_eq!(ppm.pixel(150, 50), BLACK);
    assert_eq!(ppm.pixel(30, 170), WHITE);
}

#[test]
fn render_params_masks_disk_and_marks_cusps() {
    let dir = workdir("render-params");
    let path = dir.join("params.ppm");
    stdout_of(&["--out", path.to_str().unwrap(), "render-params", "--d", "2", "--resolution", "64"]);
    let ppm = Ppm::load(&path);
    assert_eq!((ppm.width, ppm.height), (64, 64));
    // corner lies outside the closed disk, center deep inside the curve
    assert_eq!(ppm.pixel(0, 0), BLACK);
    assert_eq!(ppm.pixel(32, 32), WHITE);
    let mut reds = 0;
    for row in 0..64 {
        for col in 0..64 {
            let px = ppm.pixel(row, col);
            assert!(
                [WHITE, BLACK, GRAY, RED].contains(&px),
                "unexpected color {px:?} at ({row}, {col})"
            );
            if px == RED {
                reds += 1;
            }
        }
    }
    assert!(reds >= 1, "cusp markers missing");
}

#[test]
fn multibrot_raster_palette_and_nesting() {
    let dir = workdir("multibrot");
    let coarse_path = dir.join("coarse.ppm");
    let fine_path = dir.join("fine.ppm");
    stdout_of(&["--out", coarse_path.to_str().unwrap(), "multibrot", "--d", "2", "--resolution", "200"]);
    stdout_of(&["--out", fine_path.to_str().unwrap(), "multibrot", "--d", "2", "--resolution", "400"]);
    let coarse = Ppm::load(&coarse_path);
    let fine = Ppm::load(&fine_path);
    assert_eq!(coarse.pixel(0, 0), GRAY);

    // both resolutions sample the same grid points at even indices; away from
    // the black boundary marks the classification must agree exactly
    let mut shared = 0usize;
    for row in 0..200 {
        for col in 0..200 {
            let a = coarse.pixel(row, col);
            let b = fine.pixel(2 * row, 2 * col);
            assert!([WHITE, BLACK, GRAY].contains(&a), "unexpected color {a:?}");
            if a == BLACK || b == BLACK {
                continue;
            }
            assert_eq!(a, b, "shared grid point diverged at ({row}, {col})");
            shared += 1;
        }
    }
    assert!(shared > 30_000, "too few comparable pixels: {shared}");
}

#[test]
fn raster_files_are_byte_deterministic() {
    let dir = workdir("determinism");
    let first = dir.join("a.ppm");
    let second = dir.join("b.ppm");
    for path in [&first, &second] {
        stdout_of(&["--out", path.to_str().unwrap(), "render-params", "--d", "3", "--resolution", "64"]);
    }
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
}

#[test]
fn resolution_floor_is_enforced() {
    let dir = workdir("resolution");
    let path = dir.join("tiny.ppm");
    assert_diagnostic(
        &run(&["--out", path.to_str().unwrap(), "multibrot", "--d", "2", "--resolution", "8"]),
        2,
        "usage",
    );
}
