use std::fs;
use std::path::Path;

use hypermatch::checks::{self, Config};
use hypermatch::hypergraph::{parse, random_connected_kgraph, random_ktree, serialize};
use hypermatch::matchpoly::{
    derivative_identity_check, match_counts, matching_polynomial, matching_polynomial_recursive,
};
use hypermatch::pathtree::{
    build_path_tree_of_kind, divisibility_quotient_with, has_matching_sign_pattern,
    root_deletion_decomposition_check_with, verify_godsil_with, PathTreeKind, TreeLimits,
};
use hypermatch::poly::parse_rational;
use hypermatch::tensor::alpha::{reciprocal, uniform, verify_certificate};
use hypermatch::tensor::{
    construct_alpha_normal_tree, construct_alpha_normal_tree_near, eigen_residual, nqz_iterate,
};
use hypermatch::zeros::{
    all_roots, bounds_report, cyclic_index, default_tol, lambda_enclosure, largest_real_root, max_modulus_count,
    roots_csv, rotation_check, simplicity_check, strict_monotonicity_report, Deletion, IntPoly, Reduced,
};
use hypermatch::{Error, Hypergraph, SparsePoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::{AlphaArgs, Check, Command, Family, Method, TreeKind};

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

pub struct Failure {
    pub message: String,
    pub code: u8,
}

pub const VERIFIED: u8 = 0;
pub const REFUTED: u8 = 1;
pub const INPUT_ERROR: u8 = 2;
pub const RESOURCE_LIMIT: u8 = 3;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LimitExceeded(_) | Error::Inconclusive(_) => RESOURCE_LIMIT,
            Error::NotDivisible | Error::NotARoot(_) => REFUTED,
            _ => INPUT_ERROR,
        };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: INPUT_ERROR,
    }
}

type CmdResult = Result<Output, Failure>;

fn json_out(v: Value, code: u8) -> CmdResult {
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    Ok(Output { stdout: s, code })
}

fn verdict(holds: bool) -> u8 {
    if holds {
        VERIFIED
    } else {
        REFUTED
    }
}

fn load(path: &Path) -> Result<Hypergraph, Failure> {
    let bytes = fs::read(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok(parse(&bytes)?)
}

fn rational_arg(s: &str, what: &str) -> Result<BigRational, Failure> {
    parse_rational(s).map_err(|e| input_error(format!("{what}: {e}")))
}

fn positive_arg(s: &str, what: &str) -> Result<BigRational, Failure> {
    let r = rational_arg(s, what)?;
    if !r.is_positive() {
        return Err(input_error(format!("{what} must be positive")));
    }
    Ok(r)
}

fn tree_kind(kind: TreeKind) -> PathTreeKind {
    match kind {
        TreeKind::Nonbacktracking => PathTreeKind::Nonbacktracking,
        TreeKind::DeletionOrdered => PathTreeKind::DeletionOrdered,
    }
}

fn poly_json(p: &SparsePoly) -> Value {
    p.to_json("x")
}

pub fn run(command: Command) -> CmdResult {
    match command {
        Command::Info { file } => info(&load(&file)?),
        Command::Matchpoly { file, method } => {
            let h = load(&file)?;
            let mu = match method {
                Method::Enum => matching_polynomial(&h)?,
                Method::Recursive => matching_polynomial_recursive(&h)?,
            };
            json_out(json!({"mu": poly_json(&mu)}), VERIFIED)
        }
        Command::Pathtree {
            file,
            root,
            max_vertices,
            labels,
            tree,
        } => {
            let h = load(&file)?;
            let pt = build_path_tree_of_kind(&h, root, max_vertices, tree_kind(tree.kind))?;
            if let Some(out) = labels {
                let mut text = serde_json::to_string_pretty(&pt.labels_json()).expect("values serialize");
                text.push('\n');
                fs::write(&out, text).map_err(|e| input_error(format!("{}: {e}", out.display())))?;
            }
            Ok(Output {
                stdout: String::from_utf8(serialize(&pt.tree)).expect("HGR is ASCII"),
                code: VERIFIED,
            })
        }
        Command::Lambda { file, tol } => {
            let h = load(&file)?;
            let tol = match tol {
                Some(t) => positive_arg(&t, "--tol")?,
                None => default_tol(),
            };
            json_out(lambda_enclosure(&h, &tol)?.to_json(), VERIFIED)
        }
        Command::Roots { file, csv, precision } => {
            let h = load(&file)?;
            if precision.is_nan() || precision <= 0.0 {
                return Err(input_error("--precision must be positive"));
            }
            let r = all_roots(&h, precision)?;
            if csv {
                return Ok(Output {
                    stdout: roots_csv(&r),
                    code: VERIFIED,
                });
            }
            let roots: Vec<Value> = r.roots.iter().map(|z| json!({"re": z.re + 0.0, "im": z.im + 0.0})).collect();
            json_out(
                json!({
                    "k": r.k,
                    "roots": roots,
                    "rotation_invariant": rotation_check(&r),
                    "max_modulus_count": max_modulus_count(&r, 1e-9),
                }),
                VERIFIED,
            )
        }
        Command::Cyclic { file } => {
            let h = load(&file)?;
            let mu = matching_polynomial(&h)?;
            let simple = if h.num_edges() == 0 {
                Value::Null
            } else {
                Value::Bool(simplicity_check(&h)?)
            };
            json_out(
                json!({"k": h.k(), "cyclic_index": cyclic_index(&mu), "simple_largest_zero": simple}),
                VERIFIED,
            )
        }
        Command::Bounds { file } => {
            let h = load(&file)?;
            let b = bounds_report(&h, &default_tol())?;
            let holds = b.lower_ok && b.upper_ok != Some(false);
            json_out(b.to_json(), verdict(holds))
        }
        Command::Rho { file, tol, max_iter } => {
            let h = load(&file)?;
            if tol.is_nan() || tol <= 0.0 || max_iter == 0 {
                return Err(input_error("--tol and --max-iter must be positive"));
            }
            let r = nqz_iterate(&h, tol, max_iter)?;
            let residual = eigen_residual(&h, r.rho(), &r.x)?;
            let mut v = r.to_json();
            v["residual"] = json!(residual);
            json_out(v, if r.converged { VERIFIED } else { RESOURCE_LIMIT })
        }
        Command::Alphanormal(args) => alphanormal(args),
        Command::Verify {
            check,
            file,
            root,
            tree,
            delete_vertex,
            delete_edge,
        } => {
            let h = load(&file)?;
            verify(check, &h, root, tree_kind(tree.kind), delete_vertex, delete_edge)
        }
        Command::Gen {
            family,
            k,
            n,
            edges,
            seed,
        } => {
            let h = match family {
                Family::Ktree => {
                    if n.is_some() {
                        return Err(input_error("--n is fixed by --k and --edges for a k-tree"));
                    }
                    random_ktree(k, edges, seed)?
                }
                Family::Kgraph => {
                    let n = n.ok_or_else(|| input_error("kgraph needs --n"))?;
                    random_connected_kgraph(k, n, edges, seed)?
                }
            };
            Ok(Output {
                stdout: String::from_utf8(serialize(&h)).expect("HGR is ASCII"),
                code: VERIFIED,
            })
        }
        Command::Selftest { filter, sabotage_mu } => selftest(filter.as_deref(), sabotage_mu),
    }
}

fn info(h: &Hypergraph) -> CmdResult {
    let counts = match_counts(h)?;
    let profile = h.degree_profile();
    json_out(
        json!({
            "k": h.k(),
            "n": h.n(),
            "edges": h.num_edges(),
            "max_degree": profile.max,
            "min_degree": profile.min,
            "components": h.components().len(),
            "connected": h.is_connected(),
            "is_ktree": h.is_ktree(),
            "is_kforest": h.is_kforest(),
            "matching_number": counts.matching_number(),
        }),
        VERIFIED,
    )
}

fn alphanormal(args: AlphaArgs) -> CmdResult {
    let t = load(&args.file)?;
    if let Some(cert_path) = &args.check {
        let text = fs::read_to_string(cert_path).map_err(|e| input_error(format!("{}: {e}", cert_path.display())))?;
        let cert: Value =
            serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", cert_path.display())))?;
        let tau = rational_arg(&args.tau, "--tau")?;
        if tau.is_negative() {
            return Err(input_error("--tau must be nonnegative"));
        }
        let report = verify_certificate(&t, &cert, &tau)?;
        return json_out(report.to_json(), verdict(report.all_ok()));
    }
    if args.from_lambda {
        let precision = positive_arg(&args.precision, "--precision")?;
        let r = Reduced::of(&t)?;
        let y = largest_real_root(&IntPoly::from_sparse(&r.q), &precision)?;
        let alpha = reciprocal(&y.midpoint());
        let c = construct_alpha_normal_tree_near(&t, &uniform(&t, &alpha))?;
        let mut v = c.to_json();
        v["surrogate"] = json!({"y": y.to_json(), "alpha": alpha.to_string()});
        return json_out(v, VERIFIED);
    }
    let Some(alpha) = &args.alpha else {
        return Err(input_error("give one of --alpha, --from-lambda or --check"));
    };
    let alpha = rational_arg(alpha, "--alpha")?;
    let c = construct_alpha_normal_tree(&t, &uniform(&t, &alpha))?;
    json_out(c.to_json(), VERIFIED)
}

fn verify(
    check: Check,
    h: &Hypergraph,
    root: usize,
    kind: PathTreeKind,
    delete_vertex: Vec<usize>,
    delete_edge: Vec<usize>,
) -> CmdResult {
    if matches!(check, Check::Godsil | Check::Divides | Check::Decomposition) && root >= h.n() {
        return Err(Error::IdOutOfRange { id: root, limit: h.n() }.into());
    }
    let limits = TreeLimits {
        kind,
        ..Default::default()
    };
    let tree_name = match kind {
        PathTreeKind::Nonbacktracking => "nonbacktracking",
        PathTreeKind::DeletionOrdered => "deletion-ordered",
    };
    match check {
        Check::Godsil => {
            let holds = verify_godsil_with(h, root, &limits)?;
            json_out(
                json!({"check": "godsil", "root": root, "tree": tree_name, "holds": holds}),
                verdict(holds),
            )
        }
        Check::Divides => match divisibility_quotient_with(h, root, &limits) {
            Ok(q) => {
                let pattern = has_matching_sign_pattern(&q, h.k());
                json_out(
                    json!({
                        "check": "divides",
                        "root": root,
                        "tree": tree_name,
                        "holds": pattern,
                        "quotient": poly_json(&q),
                        "matching_sign_pattern": pattern,
                    }),
                    verdict(pattern),
                )
            }
            Err(Error::NotDivisible) => json_out(
                json!({"check": "divides", "root": root, "tree": tree_name, "holds": false, "quotient": null}),
                REFUTED,
            ),
            Err(e) => Err(e.into()),
        },
        Check::Derivative => {
            let holds = derivative_identity_check(h)?;
            json_out(json!({"check": "derivative", "holds": holds}), verdict(holds))
        }
        Check::Rotation => {
            let r = all_roots(h, hypermatch::zeros::DEFAULT_PRECISION)?;
            let invariant = rotation_check(&r);
            let top = max_modulus_count(&r, 1e-9);
            let holds = invariant && (!h.is_connected() || top == h.k());
            json_out(
                json!({
                    "check": "rotation",
                    "holds": holds,
                    "rotation_invariant": invariant,
                    "max_modulus_count": top,
                }),
                verdict(holds),
            )
        }
        Check::Decomposition => {
            let holds = root_deletion_decomposition_check_with(h, root, &limits)?;
            json_out(
                json!({"check": "decomposition", "root": root, "tree": tree_name, "holds": holds}),
                verdict(holds),
            )
        }
        Check::Mono => {
            let deletion = match (delete_vertex.is_empty(), delete_edge.is_empty()) {
                (false, true) => Deletion::Vertices(delete_vertex),
                (true, false) => Deletion::Edges(delete_edge),
                _ => return Err(input_error("mono needs either --delete-vertex or --delete-edge")),
            };
            let r = strict_monotonicity_report(h, &deletion)?;
            json_out(
                json!({
                    "check": "mono",
                    "holds": r.separated,
                    "full": r.full.to_json(),
                    "sub": r.sub.as_ref().map(|s| s.to_json()),
                }),
                verdict(r.separated),
            )
        }
    }
}

/// Recursion with one coefficient nudged, for exercising the negative path.
fn sabotaged_mu(h: &Hypergraph) -> hypermatch::Result<SparsePoly> {
    let mu = matching_polynomial_recursive(h)?;
    if h.num_edges() < 2 {
        return Ok(mu);
    }
    Ok(&mu + &SparsePoly::monomial(BigInt::from(1), h.n() - h.k()))
}

fn selftest(filter: Option<&str>, sabotage: bool) -> CmdResult {
    let mut config = Config::default();
    if sabotage {
        config.recursive_mu = sabotaged_mu;
    }
    let results = checks::run_checks(&config, filter);
    if results.is_empty() {
        return Err(input_error(format!(
            "no check matches {:?}; known: {}",
            filter.unwrap_or(""),
            checks::check_names().join(", ")
        )));
    }
    for r in &results {
        eprintln!("{}", r.line());
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.name).collect();
    json_out(
        json!({
            "checks": results.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "failed": failed,
            "passed": failed.is_empty(),
        }),
        verdict(failed.is_empty()),
    )
}
