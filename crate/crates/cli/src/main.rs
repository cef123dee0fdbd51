//! twistlab: exact verification and normalization of Drinfeld twists,
//! gauge transformations, and crossed products on truncated enveloping
//! algebras. Every subcommand reads JSON payloads, checks identities with
//! bit-exact rational arithmetic, and reports each asserted law by name.
//!
//! Exit codes: 0 = all checks passed, 1 = a mathematical law failed on the
//! given data (first failure reported), 2 = malformed input or configuration.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use twistlab_core::error::Error;
use twistlab_core::uea::{Ctx, Elem};
use twistlab_core::{crossedprod, geom, lie, rmatrix, selftest, serial, twist};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "twistlab",
    version,
    about = "Exact calculator for twists, gauges, and crossed products on truncated enveloping algebras"
)]
struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a structure-constant table: antisymmetry and the Jacobi identity
    ValidateLie {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Check the 2-cocycle, counit, and invertibility laws for a twist
    VerifyTwist {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        twist: PathBuf,
        #[arg(long, default_value_t = 4)]
        h_order: usize,
    },
    /// Normalize a twist to its product-of-exponentials form with a gauge certificate
    NormalizeTwist {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        twist: PathBuf,
        #[arg(long, default_value_t = 4)]
        h_order: usize,
    },
    /// Split a twisted endomorphism into an automorphism and an invariant twist
    Separate {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        endo: PathBuf,
        #[arg(long, default_value_t = 4)]
        h_order: usize,
    },
    /// Gauge identity joining exp(Xh)·exp(Yh) to exp((X+Y)h)
    GroupLaw {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, default_value_t = 4)]
        h_order: usize,
    },
    /// Alternating obstruction for a triple of invariant skews
    Associator {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        z: PathBuf,
        #[arg(long, default_value_t = 4)]
        h_order: usize,
    },
    /// Classical Yang-Baxter check for a skew 2-tensor
    CybeCheck {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        x: PathBuf,
    },
    /// First-order coefficient of a twist, normalized to a classical solution
    ClassicalLimit {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        twist: PathBuf,
        #[arg(long, default_value_t = 4)]
        h_order: usize,
    },
    /// Support of an invariant skew: the subspace and its symplectic form
    Support {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        x: PathBuf,
    },
    /// Add two invariant skews on supports and cross-check the direct sum
    AddSupports {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
    /// Central witness a with da = [X, Y] for two invariant skews
    ThreeVector {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, default_value_t = 4)]
        h_order: usize,
    },
    /// Full axiom battery for a candidate R-matrix
    Triangular {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        rmatrix: PathBuf,
        #[arg(long, default_value_t = 4)]
        h_order: usize,
    },
    /// Drinfeld element of a verified R-matrix, with its structural checks
    Drinfeld {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        rmatrix: PathBuf,
        #[arg(long, default_value_t = 4)]
        h_order: usize,
    },
    /// Crossed product over a rank-2 lattice of invariant skews
    CrossedProduct {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, default_value_t = 3)]
        h_order: usize,
    },
    /// Worked example: the crossed-product extension on the Heisenberg algebra
    HeisenbergDemo {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        h_order: usize,
    },
    /// Run the numbered acceptance criteria
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run a single criterion by id (c01 .. c12)
        #[arg(long)]
        only: Option<String>,
    },
}

/// One asserted identity with its status.
struct Check {
    op: &'static str,
    ok: bool,
    detail: String,
}

impl Check {
    fn ok(op: &'static str, detail: impl Into<String>) -> Check {
        Check { op, ok: true, detail: detail.into() }
    }

    fn violation(op: &'static str, detail: impl Into<String>) -> Check {
        Check { op, ok: false, detail: detail.into() }
    }
}

struct Report {
    command: &'static str,
    checks: Vec<Check>,
    data: Value,
}

impl Report {
    fn new(command: &'static str) -> Report {
        Report { command, checks: Vec::new(), data: Value::Null }
    }

    /// Records a core result as a named check; mathematical failures become
    /// violations in the report, input failures abort with exit 2.
    fn check<T>(
        &mut self,
        op: &'static str,
        ok_detail: impl Into<String>,
        r: twistlab_core::Result<T>,
    ) -> Result<Option<T>, String> {
        match r {
            Ok(v) => {
                self.checks.push(Check::ok(op, ok_detail));
                Ok(Some(v))
            }
            Err(Error::Config(msg)) => Err(msg),
            Err(e) => {
                self.checks.push(Check::violation(op, e.to_string()));
                Ok(None)
            }
        }
    }

    fn assert_eq_elems(&mut self, op: &'static str, detail: &str, lhs: &Elem, rhs: &Elem) {
        if lhs == rhs {
            self.checks.push(Check::ok(op, detail));
        } else {
            self.checks
                .push(Check::violation(op, format!("{}: sides differ", detail)));
        }
    }

    fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let checks: Vec<Value> = self
                    .checks
                    .iter()
                    .map(|c| {
                        json!({
                            "op": c.op,
                            "status": if c.ok { "ok" } else { "violation" },
                            "detail": c.detail,
                        })
                    })
                    .collect();
                let body = json!({
                    "command": self.command,
                    "checks": checks,
                    "data": self.data,
                    "status": if self.all_ok() { "ok" } else { "violation" },
                });
                format!("{:#}\n", body)
            }
            Format::Text => {
                let mut out = String::new();
                for c in &self.checks {
                    out.push_str(&format!(
                        "{:<24} {}  {}\n",
                        c.op,
                        if c.ok { "ok" } else { "VIOLATION" },
                        c.detail
                    ));
                }
                if let Value::Object(map) = &self.data {
                    for (k, v) in map {
                        if let Value::String(s) = v {
                            out.push_str(&format!("{}: {}\n", k, s));
                        } else {
                            out.push_str(&format!("{}: {}\n", k, v));
                        }
                    }
                }
                out.push_str(&format!(
                    "result: {}\n",
                    if self.all_ok() { "ok" } else { "violation" }
                ));
                out
            }
        }
    }
}

fn read_text(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {}", path.display(), e))
}

fn input_err(path: &Path, e: impl std::fmt::Display) -> String {
    format!("{}: {}", path.display(), e)
}

/// Loads an algebra where the file is trusted configuration: any failure,
/// mathematical or not, is an input error.
fn load_algebra(path: &Path, h_order: usize) -> Result<Arc<Ctx>, String> {
    let text = read_text(path)?;
    let alg = serial::parse_lie(&text).map_err(|e| input_err(path, e))?;
    Ok(Ctx::new(alg, h_order))
}

fn load_elem(ctx: &Arc<Ctx>, path: &Path) -> Result<Elem, String> {
    let text = read_text(path)?;
    serial::parse_elem(ctx, &text).map_err(|e| input_err(path, e))
}

fn elem_data(x: &Elem) -> Value {
    json!({
        "display": serial::display_elem(x),
        "tensor": serde_json::to_value(serial::elem_to_json(x)).expect("serialize"),
    })
}

fn basis_value(s: &twistlab_core::Subspace) -> Value {
    let rows: Vec<Vec<String>> = s
        .basis()
        .iter()
        .map(|v| v.iter().map(twistlab_core::scalars::format_rational).collect())
        .collect();
    serde_json::to_value(rows).expect("serialize")
}

fn run(cmd: Cmd) -> Result<Report, String> {
    match cmd {
        Cmd::ValidateLie { algebra } => {
            let mut report = Report::new("validate-lie");
            let text = read_text(&algebra)?;
            let parsed: serial::LieJson =
                serde_json::from_str(&text).map_err(|e| input_err(&algebra, e))?;
            // validation failures here are the object under test, not config
            match serial::lie_from_json(&parsed) {
                Ok(alg) => {
                    report.checks.push(Check::ok(
                        "validate_lie",
                        "antisymmetry and the Jacobi identity hold",
                    ));
                    report.data = json!({
                        "dim": alg.dim(),
                        "basis": alg.names().to_vec(),
                    });
                }
                Err(Error::Config(msg)) => return Err(input_err(&algebra, msg)),
                Err(e) => report.checks.push(Check::violation("validate_lie", e.to_string())),
            }
            Ok(report)
        }
        Cmd::VerifyTwist { algebra, twist: twist_path, h_order } => {
            let mut report = Report::new("verify-twist");
            let ctx = load_algebra(&algebra, h_order)?;
            let f = load_elem(&ctx, &twist_path)?;
            report.check(
                "check_twist",
                "invertible, counit-normalized, and the 2-cocycle identity holds",
                twist::check_twist(&f),
            )?;
            Ok(report)
        }
        Cmd::NormalizeTwist { algebra, twist: twist_path, h_order } => {
            let mut report = Report::new("normalize-twist");
            let ctx = load_algebra(&algebra, h_order)?;
            let f = load_elem(&ctx, &twist_path)?;
            report.check("check_twist", "input is a twist", twist::check_twist(&f))?;
            if let Some(nf) = report.check(
                "normalize_invariant_twist",
                "invariant coefficients recovered with a gauge certificate",
                twist::normalize_invariant_twist(&f),
            )? {
                let certified = twist::gauge_twist(&nf.gauge, &f).map_err(|e| e.to_string())?;
                let rebuilt =
                    twist::reconstruct(&ctx, &nf.xs).map_err(|e| e.to_string())?;
                report.assert_eq_elems(
                    "gauge_certificate",
                    "gauging the input by the certificate reproduces the exponential form",
                    &certified,
                    &rebuilt,
                );
                report.data = json!({
                    "normal_form": serde_json::to_value(serial::normal_form_to_json(&nf))
                        .expect("serialize"),
                    "coefficients": nf
                        .xs
                        .iter()
                        .map(serial::display_elem)
                        .collect::<Vec<_>>(),
                    "gauge": serial::display_elem(&nf.gauge),
                });
            }
            Ok(report)
        }
        Cmd::Separate { algebra, endo, h_order } => {
            let mut report = Report::new("separate");
            let ctx = load_algebra(&algebra, h_order)?;
            let text = read_text(&endo)?;
            let parsed: serial::EndoJson =
                serde_json::from_str(&text).map_err(|e| input_err(&endo, e))?;
            let t = match serial::endo_from_json(&ctx, &parsed) {
                Ok(t) => t,
                Err(Error::Config(msg)) => return Err(input_err(&endo, msg)),
                Err(e) => {
                    report.checks.push(Check::violation("twisted_endomorphism", e.to_string()));
                    return Ok(report);
                }
            };
            report
                .checks
                .push(Check::ok("twisted_endomorphism", "compatibility axiom verified"));
            if let Some(sep) = report.check(
                "separate",
                "gauged endomorphism factors as invariant twist times automorphism",
                twist::separate(&t),
            )? {
                report.data = json!({
                    "lie_matrix": serial::matrix_to_json(&sep.lie_matrix),
                    "coefficients": sep
                        .xs
                        .iter()
                        .map(serial::display_elem)
                        .collect::<Vec<_>>(),
                    "gauge": serial::display_elem(&sep.gauge),
                    "automorphism": serde_json::to_value(serial::endo_to_json(&sep.auto))
                        .expect("serialize"),
                });
            }
            Ok(report)
        }
        Cmd::GroupLaw { algebra, x, y, h_order } => {
            let mut report = Report::new("group-law");
            let ctx = load_algebra(&algebra, h_order)?;
            let xe = load_elem(&ctx, &x)?;
            let ye = load_elem(&ctx, &y)?;
            if let Some(gl) = report.check(
                "group_law",
                "exp(Xh)exp(Yh) is gauge-equal to exp((X+Y)h)",
                twist::group_law(&xe, &ye),
            )? {
                report.data = json!({
                    "sum": serial::display_elem(&gl.sum),
                    "witness": serial::display_elem(&gl.witness),
                    "gauge": serial::display_elem(&gl.gauge),
                });
            }
            Ok(report)
        }
        Cmd::Associator { algebra, x, y, z, h_order } => {
            let mut report = Report::new("associator");
            let ctx = load_algebra(&algebra, h_order)?;
            let xe = load_elem(&ctx, &x)?;
            let ye = load_elem(&ctx, &y)?;
            let ze = load_elem(&ctx, &z)?;
            if let Some(a) = report.check(
                "associator",
                "alternating obstruction computed",
                twist::associator(&xe, &ye, &ze),
            )? {
                if a.is_zero() {
                    report
                        .checks
                        .push(Check::ok("associator_vanishes", "the obstruction is zero"));
                } else {
                    report.checks.push(Check::violation(
                        "associator_vanishes",
                        "the obstruction is non-zero",
                    ));
                }
                report.data = elem_data(&a);
            }
            Ok(report)
        }
        Cmd::CybeCheck { algebra, x } => {
            let mut report = Report::new("cybe-check");
            let ctx = load_algebra(&algebra, 1)?;
            let r = load_elem(&ctx, &x)?;
            if let Some(residual) =
                report.check("cybe", "classical equation evaluated", rmatrix::cybe(&r))?
            {
                if residual.is_zero() {
                    report
                        .checks
                        .push(Check::ok("cybe_holds", "the classical equation holds"));
                } else {
                    report.checks.push(Check::violation(
                        "cybe_holds",
                        "the classical equation fails",
                    ));
                }
                report.data = json!({ "residual": serial::display_elem(&residual) });
            }
            Ok(report)
        }
        Cmd::ClassicalLimit { algebra, twist: twist_path, h_order } => {
            let mut report = Report::new("classical-limit");
            let ctx = load_algebra(&algebra, h_order)?;
            let f = load_elem(&ctx, &twist_path)?;
            report.check("check_twist", "input is a twist", twist::check_twist(&f))?;
            if let Some(r) = report.check(
                "classical_limit",
                "first-order coefficient is a classical solution",
                rmatrix::classical_limit(&f),
            )? {
                report.data = elem_data(&r);
            }
            Ok(report)
        }
        Cmd::Support { algebra, x } => {
            let mut report = Report::new("support");
            let ctx = load_algebra(&algebra, 1)?;
            let xe = load_elem(&ctx, &x)?;
            if let Some(s) = report.check(
                "classify",
                "invariant skew with invertible form on its support",
                geom::classify(&xe),
            )? {
                let back = geom::casimir_of(&ctx, &s).map_err(|e| e.to_string())?;
                report.assert_eq_elems(
                    "casimir_of",
                    "support data reconstructs the input",
                    &back,
                    &xe,
                );
                report.data = json!({
                    "dim": s.dim(),
                    "basis": basis_value(&s.space),
                    "form": serial::matrix_to_json(&s.form),
                });
            }
            Ok(report)
        }
        Cmd::AddSupports { algebra, x, y } => {
            let mut report = Report::new("add-supports");
            let ctx = load_algebra(&algebra, 1)?;
            let xe = load_elem(&ctx, &x)?;
            let ye = load_elem(&ctx, &y)?;
            let sx = report.check("classify", "first summand classified", geom::classify(&xe))?;
            let sy = report.check("classify", "second summand classified", geom::classify(&ye))?;
            if let (Some(sx), Some(sy)) = (sx, sy) {
                if let Some(sum) = report.check(
                    "geometric_add",
                    "supports added on the orthogonal complement",
                    geom::geometric_add(&sx, &sy),
                )? {
                    let direct = geom::support(&xe.add(&ye)).map_err(|e| e.to_string())?;
                    if sum == direct {
                        report.checks.push(Check::ok(
                            "support_of_sum",
                            "geometric sum equals the direct support of X + Y",
                        ));
                    } else {
                        report.checks.push(Check::violation(
                            "support_of_sum",
                            "geometric sum differs from the direct support",
                        ));
                    }
                    report.data = json!({
                        "dim": sum.dim(),
                        "basis": basis_value(&sum.space),
                        "form": serial::matrix_to_json(&sum.form),
                        "sum": serial::display_elem(&xe.add(&ye)),
                    });
                }
            }
            Ok(report)
        }
        Cmd::ThreeVector { algebra, x, y, h_order } => {
            let mut report = Report::new("three-vector");
            let ctx = load_algebra(&algebra, h_order)?;
            let xe = load_elem(&ctx, &x)?;
            let ye = load_elem(&ctx, &y)?;
            if let Some(tv) = report.check(
                "three_vector",
                "central witness with da = [X, Y] constructed",
                geom::three_vector(&xe, &ye),
            )? {
                report.data = json!({
                    "a": serial::display_elem(&tv.a),
                    "bracket_space": basis_value(&tv.bracket_space),
                    "c_tensor": serial::display_elem(&tv.c_tensor),
                });
            }
            Ok(report)
        }
        Cmd::Triangular { algebra, rmatrix: rpath, h_order } => {
            let mut report = Report::new("triangular");
            let ctx = load_algebra(&algebra, h_order)?;
            let r = load_elem(&ctx, &rpath)?;
            let checks = rmatrix::check_triangular(&r).map_err(|e| match e {
                Error::Config(msg) => msg,
                other => other.to_string(),
            })?;
            let axioms: [(&'static str, bool, &'static str); 7] = [
                ("normalized", checks.normalized, "both counits give 1"),
                ("intertwines", checks.intertwines, "R commutes with the coproduct"),
                ("fuses_left", checks.fuses_left, "(coproduct x 1)(R) = R13 R23"),
                ("fuses_right", checks.fuses_right, "(1 x coproduct)(R) = R13 R12"),
                ("unitary", checks.unitary, "R21 R = 1"),
                ("qybe", checks.qybe, "quantum Yang-Baxter equation"),
                ("twist_cocycle", checks.twist_cocycle, "R is itself a twist"),
            ];
            for (op, ok, detail) in axioms {
                if ok {
                    report.checks.push(Check::ok(op, detail));
                } else {
                    report.checks.push(Check::violation(op, detail));
                }
            }
            Ok(report)
        }
        Cmd::Drinfeld { algebra, rmatrix: rpath, h_order } => {
            let mut report = Report::new("drinfeld");
            let ctx = load_algebra(&algebra, h_order)?;
            let r = load_elem(&ctx, &rpath)?;
            report.check(
                "require_triangular",
                "all R-matrix axioms hold",
                rmatrix::require_triangular(&r),
            )?;
            if let Some(u) = report.check(
                "drinfeld_element",
                "group-like, central, and an involution",
                rmatrix::drinfeld_element(&r),
            )? {
                report.data = elem_data(&u);
            }
            Ok(report)
        }
        Cmd::CrossedProduct { algebra, x, y, h_order } => {
            let mut report = Report::new("crossed-product");
            let ctx = load_algebra(&algebra, h_order)?;
            let xe = load_elem(&ctx, &x)?;
            let ye = load_elem(&ctx, &y)?;
            let lat = match report.check(
                "lattice",
                "generators are invariant skews with invertible supports",
                crossedprod::Lattice::new(&ctx, vec![xe, ye]),
            )? {
                Some(l) => l,
                None => return Ok(report),
            };
            let grid: Vec<Vec<i64>> =
                vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1], vec![-1, 1]];
            report.check(
                "crossed_relations",
                "exchange relation and 2-cocycle identity hold on the sample grid",
                lat.verify_action(&grid),
            )?;
            let ext = match report.check(
                "extension",
                "primitive generators extend with central curvature corrections",
                crossedprod::Extension::from_lattice(&lat),
            )? {
                Some(e) => e,
                None => return Ok(report),
            };
            report.check(
                "extension_relations",
                "coassociativity, counit, commutator, and product compatibility hold",
                crossedprod::verify_extension(&ext),
            )?;
            let theta = lat.theta(&[1, 0], &[0, 1]).map_err(|e| e.to_string())?;
            report.data = json!({
                "theta_12": serial::display_elem(&theta),
                "commutator_12": serial::display_elem(ext.commutator(0, 1)),
                "curvature_1": serial::display_elem(ext.curvature(0)),
                "curvature_2": serial::display_elem(ext.curvature(1)),
            });
            Ok(report)
        }
        Cmd::HeisenbergDemo { m, h_order } => {
            if m == 0 {
                return Err("--m must be at least 1".to_string());
            }
            if h_order < 2 {
                return Err("--h-order must be at least 2 for the demo".to_string());
            }
            let mut report = Report::new("heisenberg-demo");
            let ctx = Ctx::new(lie::heisenberg(m), h_order);
            let cidx = lie::heisenberg_center(m);
            let c = Elem::generator(&ctx, cidx);
            let mut gens = Vec::new();
            for i in 0..(2 * m) {
                let v = Elem::generator(&ctx, i);
                gens.push(v.tensor(&c).sub(&c.tensor(&v)));
            }
            let lat = crossedprod::Lattice::new(&ctx, gens).map_err(|e| e.to_string())?;
            let grid: Vec<Vec<i64>> = (0..=1i64)
                .flat_map(|a| (0..=1i64).map(move |b| {
                    let mut p = vec![0i64; 2 * m];
                    p[0] = a;
                    p[m] = b;
                    p
                }))
                .collect();
            report.check(
                "crossed_relations",
                "exchange relation and 2-cocycle identity hold on the sample grid",
                lat.verify_action(&grid),
            )?;
            let ext = crossedprod::Extension::from_lattice(&lat).map_err(|e| e.to_string())?;
            report.check(
                "extension_relations",
                "coassociativity, counit, commutator, and product compatibility hold",
                crossedprod::verify_extension(&ext),
            )?;
            let names = ctx.lie().names().to_vec();
            let mut relations = Vec::new();
            for i in 0..(2 * m) {
                for j in (i + 1)..(2 * m) {
                    let comm = ext.commutator(i, j);
                    if !comm.is_zero() {
                        relations.push(format!(
                            "[l_{}, l_{}] = {}",
                            names[i],
                            names[j],
                            serial::display_elem(comm)
                        ));
                    }
                }
            }
            let coproducts: Vec<String> = (0..(2 * m))
                .map(|i| {
                    format!(
                        "D(l_{}) = l_{} x 1 + 1 x l_{} + {}",
                        names[i], names[i], names[i],
                        serial::display_elem(ext.curvature(i))
                    )
                })
                .collect();
            report.data = json!({
                "algebra": format!("heisenberg({}) with center {}", m, names[cidx]),
                "commutation": relations.join("; "),
                "coproducts": coproducts.join("; "),
                "theta_12": serial::display_elem(
                    &lat.theta(
                        &{ let mut p = vec![0i64; 2 * m]; p[0] = 1; p },
                        &{ let mut q = vec![0i64; 2 * m]; q[m] = 1; q },
                    )
                    .map_err(|e| e.to_string())?
                ),
            });
            Ok(report)
        }
        Cmd::Selftest { .. } => unreachable!("handled before report dispatch"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    // selftest prints its own report shape
    if let Cmd::Selftest { seed, only } = &cli.cmd {
        return match only {
            Some(id) => match selftest::run_single(id, *seed) {
                Some(r) => {
                    match cli.output {
                        Format::Json => println!(
                            "{:#}",
                            serde_json::to_value(&r).expect("serialize")
                        ),
                        Format::Text => println!(
                            "{} {:<22} {}  {}",
                            r.id,
                            r.name,
                            if r.passed { "PASS" } else { "FAIL" },
                            r.details
                        ),
                    }
                    if r.passed { ExitCode::SUCCESS } else { ExitCode::from(1) }
                }
                None => {
                    eprintln!("error: unknown criterion id {:?} (expected c01 .. c12)", id);
                    ExitCode::from(2)
                }
            },
            None => {
                let report = selftest::run_suite(*seed);
                match cli.output {
                    Format::Json => println!("{}", report.to_json()),
                    Format::Text => print!("{}", report.to_text()),
                }
                if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) }
            }
        };
    }

    match run(cli.cmd) {
        Ok(report) => {
            print!("{}", report.render(cli.output));
            if report.all_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
