use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use r3split::bislice::{dbar_k_residual, dbar_residual, star_mul_pointwise};
use r3split::cauchy::{cauchy_kernel, cauchy_reconstruct, kernel_regularity_residual, SliceContour, DEFAULT_NODES};
use r3split::clifford3::format_real;
use r3split::parse::{parse_element, parse_matrix, parse_poly, parse_real_pair, PolyInput};
use r3split::qdet::{format_quat_matrix, quat_det_radicand};
use r3split::qsplit::{cone_residuals, in_cone, split};
use r3split::stem::StemFunction;
use r3split::zeros::{classify_quadratic, fta_witness, multiplicities, multiplicity_profile, FactoredPoly, MultiplicityReport};
use r3split::{BiSlicePoly, ConePoint, Error, Matrix2, Quat, SphereDescriptor, DEFAULT_TOL};

const DIGITS: usize = 12;

#[derive(Parser)]
#[command(name = "r3split", version, about = "Computations in the Clifford algebra R3 through its quaternion-pair split")]
struct Cli {
    /// Comparison tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Finite-difference step.
    #[arg(long, global = true, default_value_t = 1e-3)]
    fd_step: f64,
    /// Quadrature nodes per contour.
    #[arg(long, global = true, default_value_t = DEFAULT_NODES)]
    nodes: usize,
    #[arg(long, global = true, value_enum, default_value_t = Output::Pretty)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Pretty,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Split an element into its (omega+, omega-) quaternion pair.
    Split { element: String },
    /// Test membership in the quadratic cone.
    ConeCheck { element: String },
    /// Evaluate a polynomial or a built-in stem function at a cone point.
    #[command(group(ArgGroup::new("function").required(true).args(["poly", "stem"])))]
    Eval {
        #[arg(long)]
        poly: Option<String>,
        /// identity, monomial:<n> or constant:<element>
        #[arg(long)]
        stem: Option<String>,
        #[arg(long)]
        at: String,
    },
    /// Star product of two polynomials, optionally compared pointwise.
    Star {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// Zero set of a factored quadratic.
    Roots {
        #[arg(long)]
        factored: String,
    },
    /// Multiplicity figures of a factored polynomial.
    Mult {
        #[arg(long)]
        factored: String,
        /// Base sphere `x,y`; every root sphere when omitted.
        #[arg(long)]
        sphere: Option<String>,
    },
    /// Determinant of a 2x2 matrix with cone entries.
    Det {
        #[arg(long)]
        matrix: String,
    },
    /// Cauchy-formula reconstruction error at a point.
    CauchyVerify {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 0.0)]
        center: f64,
        #[arg(long, default_value_t = 2.0)]
        radius: f64,
        #[arg(long)]
        at: String,
    },
    /// Finite-difference residuals of the Cauchy-Riemann operators.
    DbarCheck {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        at: String,
    },
    /// The Cauchy kernel and its regularity residuals.
    Kernel {
        #[arg(long)]
        s: String,
        #[arg(long)]
        at: String,
    },
}

/// Output of one command: pretty lines and structured records.
struct Report {
    lines: Vec<String>,
    records: Vec<Value>,
}

impl Report {
    fn new(line: impl Into<String>, record: Value) -> Self {
        Report { lines: vec![line.into()], records: vec![record] }
    }

    fn line(mut self, l: impl Into<String>) -> Self {
        self.lines.push(format!("  {}", l.into()));
        self
    }
}

fn num(x: f64) -> String {
    format_real(x, Some(DIGITS))
}

fn poly(src: &str) -> Result<BiSlicePoly, Error> {
    Ok(match parse_poly(src)? {
        PolyInput::Coeffs(c) => BiSlicePoly::new(c),
        PolyInput::Factored(roots) => BiSlicePoly::from_roots(&roots),
    })
}

fn point(src: &str, tol: f64) -> Result<ConePoint, Error> {
    ConePoint::new(&parse_element(src)?, tol)
}

fn factored(src: &str, tol: f64) -> Result<FactoredPoly, Error> {
    FactoredPoly::from_input(&parse_poly(src)?, tol)
}

fn mult_report(r: &MultiplicityReport, report: Option<Report>) -> Report {
    let head = format!("base {:.12}", r.base);
    let rec = json!({ "command": "mult", "report": r });
    let report = match report {
        Some(mut rep) => {
            rep.lines.push(head);
            rep.records.push(rec);
            rep
        }
        None => Report::new(head, rec),
    };
    let loc = |l: Option<Quat>| l.map(|q| format!(" at {q:.12}")).unwrap_or_default();
    report
        .line(format!("four-dimensional spherical: {}", r.four_dimensional))
        .line(format!("isolated: {}", r.isolated))
        .line(format!("spherical, first kind: {}", r.first_kind))
        .line(format!("spherical, second kind: {}", r.second_kind))
        .line(format!("plus: s = {}, points = {}{}", r.plus.spherical, r.plus.point, loc(r.plus.location)))
        .line(format!("minus: s = {}, points = {}{}", r.minus.spherical, r.minus.point, loc(r.minus.location)))
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let tol = cli.tol;
    match &cli.command {
        Command::Split { element } => {
            let x = parse_element(element)?;
            let s = split(&x);
            Ok(Report::new(format!("{s:.12}"), json!({ "command": "split", "element": x, "p": s.p, "q": s.q })))
        }
        Command::ConeCheck { element } => {
            let x = parse_element(element)?;
            let inside = in_cone(&x, tol);
            let (x123, quadric) = cone_residuals(&x);
            Ok(Report::new(
                inside.to_string(),
                json!({ "command": "cone-check", "element": x, "in_cone": inside, "x123": x123, "quadric": quadric }),
            ))
        }
        Command::Eval { poly: p, stem, at } => {
            let x = point(at, tol)?;
            let (value, source) = match (p, stem) {
                (Some(p), _) => (poly(p)?.eval(&x), p),
                (None, Some(name)) => (StemFunction::builtin(name)?.induce(&x)?, name),
                (None, None) => unreachable!("clap requires one of --poly, --stem"),
            };
            Ok(Report::new(
                format!("{value:.12}"),
                json!({ "command": "eval", "function": source, "at": x.element(), "value": value }),
            ))
        }
        Command::Star { f, g, at } => {
            let (f, g) = (poly(f)?, poly(g)?);
            let prod = f.star_mul(&g);
            let mut rec = json!({ "command": "star", "product": prod });
            let mut report = Report::new(format!("{prod:.12}"), Value::Null);
            if let Some(at) = at {
                let x = point(at, tol)?;
                let conv = prod.eval(&x);
                let pointwise = star_mul_pointwise(&f, &g, &x, tol)?;
                let diff = (conv - pointwise).max_abs();
                rec["at"] = json!(x.element());
                rec["convolution"] = json!(conv);
                rec["pointwise"] = json!(pointwise);
                rec["difference"] = json!(diff);
                report = report
                    .line(format!("convolution at x: {conv:.12}"))
                    .line(format!("pointwise at x: {pointwise:.12}"))
                    .line(format!("difference: {}", num(diff)));
            }
            report.records = vec![rec];
            Ok(report)
        }
        Command::Roots { factored: src } => {
            let f = factored(src, tol)?;
            let [alpha, beta] = f.roots[..] else {
                return Err(Error::InvalidArgument(format!(
                    "expected two linear factors, got {}",
                    f.degree()
                )));
            };
            let z = classify_quadratic(&alpha, &beta, tol);
            let residual = z.max_residual();
            let ((a1, b1), (a2, b2)) = z.factors;
            let mirrored = if z.mirrored { " (components swapped)" } else { "" };
            let mut report = Report::new(format!("case {}{mirrored}", z.case), json!({ "command": "roots", "zeros": z, "max_residual": residual }))
                .line(format!("plus: (p - ({a1:.12}))*(p - ({b1:.12}))"))
                .line(format!("minus: (q - ({a2:.12}))*(q - ({b2:.12}))"));
            for (lp, lq) in &z.zeros {
                report = report.line(format!("zero: ({lp:.12}, {lq:.12})"));
            }
            Ok(report.line(format!("max residual: {}", num(residual))))
        }
        Command::Mult { factored: src, sphere } => {
            let f = factored(src, tol)?;
            match sphere {
                Some(s) => {
                    let (x, y) = parse_real_pair(s)?;
                    Ok(mult_report(&multiplicities(&f, SphereDescriptor::new(x, y.abs()), tol), None))
                }
                None => {
                    let mut report: Option<Report> = None;
                    for r in multiplicity_profile(&f, tol) {
                        report = Some(mult_report(&r, report));
                    }
                    let mut report = report.ok_or_else(|| Error::InvalidArgument("polynomial has degree 0".into()))?;
                    if let Ok(w) = fta_witness(&f, tol) {
                        report.lines.push(format!("root: {:.12}", w.element()));
                    }
                    Ok(report)
                }
            }
        }
        Command::Det { matrix } => {
            let m = Matrix2::new(parse_matrix(matrix)?);
            let (plus, minus) = m.split_matrix();
            let det = m.det(tol)?;
            let det_minus = m.det_minus(tol)?;
            let invertible = m.is_right_invertible(tol);
            let rec = json!({
                "command": "det",
                "matrix": m.entries,
                "det": det,
                "det_minus": det_minus,
                "radicand_plus": quat_det_radicand(&plus),
                "radicand_minus": quat_det_radicand(&minus),
                "plus": plus,
                "minus": minus,
                "right_invertible": invertible,
            });
            Ok(Report::new(num(det), rec)
                .line(format!("plus matrix: {}", format_quat_matrix(&plus, Some(DIGITS))))
                .line(format!("minus matrix: {}", format_quat_matrix(&minus, Some(DIGITS))))
                .line(format!("formula on plus: {}", num(det)))
                .line(format!("formula on minus: {}", num(det_minus)))
                .line(format!("right invertible: {invertible}")))
        }
        Command::CauchyVerify { poly: p, center, radius, at } => {
            let p = poly(p)?;
            let x = point(at, tol)?;
            let c = SliceContour::new(*center, *radius, Quat::E23, cli.nodes, tol)?;
            let rebuilt = cauchy_reconstruct(&p, &c, &c, &x, tol)?;
            let direct = p.eval(&x);
            let error = (rebuilt - direct).max_abs();
            let rec = json!({
                "command": "cauchy-verify",
                "at": x.element(),
                "center": center,
                "radius": radius,
                "nodes": cli.nodes,
                "reconstructed": rebuilt,
                "direct": direct,
                "error": error,
            });
            Ok(Report::new(format!("error {}", num(error)), rec)
                .line(format!("reconstructed: {rebuilt:.12}"))
                .line(format!("direct: {direct:.12}")))
        }
        Command::DbarCheck { poly: p, at } => {
            let p = poly(p)?;
            let x = point(at, tol)?;
            if x.is_real(tol) {
                return Err(Error::RealPoint);
            }
            let h = cli.fd_step;
            let (ij, k) = (dbar_residual(&p, &x, h), dbar_k_residual(&p, &x, h));
            Ok(Report::new(
                format!("dbar_IJ {}", num(ij)),
                json!({ "command": "dbar-check", "at": x.element(), "h": h, "dbar_ij": ij, "dbar_k": k }),
            )
            .line(format!("dbar_K {}", num(k)))
            .line(format!("h {}", num(h))))
        }
        Command::Kernel { s, at } => {
            let (s, x) = (point(s, tol)?, point(at, tol)?);
            let value = cauchy_kernel(&s, &x, tol)?;
            let (left, right) = kernel_regularity_residual(&s, &x, cli.fd_step, tol)?;
            Ok(Report::new(
                format!("{value:.12}"),
                json!({ "command": "kernel", "s": s.element(), "at": x.element(), "value": value, "left_residual": left, "right_residual": right }),
            )
            .line(format!("left residual in x: {}", num(left)))
            .line(format!("right residual in s: {}", num(right))))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.output {
                Output::Pretty => report.lines.iter().for_each(|l| println!("{l}")),
                Output::Records => report.records.iter().for_each(|r| println!("{r}")),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.output == Output::Records {
                println!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            }
            match e {
                Error::Parse(p) => {
                    eprintln!("{p}");
                    ExitCode::from(2)
                }
                e => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
