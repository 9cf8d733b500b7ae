use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use thiserror::Error;

use udg_core::alphastar::{
    pick_spindling_pair, reduce, report_bounds, run, verify_certificate, AlphaStarCertificate,
    AlphaStarError, AlphaStarOptions, Outcome, PickError, ReduceError, VerifyError,
};
use udg_core::dataset::{final_102, graph_from_sector, parse_point_list, DatasetError};
use udg_core::export::to_svg;
use udg_core::field::{parse_rational, FieldError};
use udg_core::graph::{from_dimacs, to_dimacs, GraphError};
use udg_core::ops::{circle, minkowski_sum, spindle, trim, OpsError};
use udg_core::symmetry::{
    automorphism_orbits, automorphism_orbits_seeded, geometric_orbits, OrbitPartition, Orbits,
};
use udg_core::{Adjacency, FieldElem, Point, Rational, SimpleGraph, UDGraph};

use crate::{Command, Format, OrbitMode, TransformOp};

const ORBIT_BUDGET: Duration = Duration::from_secs(60);

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Ops(#[from] OpsError),
    #[error(transparent)]
    AlphaStar(#[from] AlphaStarError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Pick(#[from] PickError),
    #[error("certificate rejected: {0}")]
    Verify(#[from] VerifyError),
    #[error("certificate file: {0}")]
    Certificate(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    BoundFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => 1,
            CliError::Ops(OpsError::FieldClosure { .. }) => 3,
            CliError::Verify(_) | CliError::BoundFailed(_) => 4,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// A graph file is geometric JSON or abstract DIMACS.
enum Loaded {
    Geometric(UDGraph, Option<Vec<usize>>),
    Abstract(SimpleGraph),
}

impl Loaded {
    fn adjacency(&self) -> &dyn Adjacency {
        match self {
            Loaded::Geometric(g, _) => g,
            Loaded::Abstract(g) => g,
        }
    }

    fn geometric(self, what: &str) -> Result<UDGraph> {
        match self {
            Loaded::Geometric(g, _) => Ok(g),
            Loaded::Abstract(_) => Err(CliError::Usage(format!(
                "{what} needs vertex coordinates; DIMACS input has none"
            ))),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<Loaded> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let (g, orbits) = UDGraph::from_json(&text)?;
        Ok(Loaded::Geometric(g, orbits))
    } else {
        Ok(Loaded::Abstract(from_dimacs(&text)?))
    }
}

fn load_points(path: &Path) -> Result<Vec<Point>> {
    Ok(parse_point_list(&read(path)?)?)
}

fn load_certificate(path: &Path) -> Result<AlphaStarCertificate> {
    AlphaStarCertificate::from_json(&read(path)?).map_err(|e| CliError::Certificate(e.to_string()))
}

/// Accepts a rational `p/q` or a field quadruple `(a, b, c, d)`.
fn parse_field(s: &str) -> Result<FieldElem> {
    if s.trim_start().starts_with('(') {
        Ok(s.parse()?)
    } else {
        Ok(FieldElem::from_rational(parse_rational(s)?))
    }
}

fn center_of(g: &UDGraph) -> usize {
    g.index_of(&Point::origin()).unwrap_or(0)
}

pub fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Build {
            points,
            dataset,
            with_origin,
            minkowski_self,
            minkowski_with,
            output,
        } => {
            let mut pts = match points {
                Some(p) => load_points(&p)?,
                None if dataset => final_102(),
                None => return Err(CliError::Usage("give --points or --dataset".into())),
            };
            if with_origin {
                pts.push(Point::origin());
            }
            let base = UDGraph::build(pts);
            let mut g = base.clone();
            for _ in 0..minkowski_self {
                g = minkowski_sum(&g, &base, center_of(&base))?;
            }
            if let Some(path) = minkowski_with {
                let h = UDGraph::build(load_points(&path)?);
                if h.is_empty() {
                    return Err(CliError::Usage("empty summand".into()));
                }
                g = minkowski_sum(&g, &h, center_of(&h))?;
            }
            eprintln!("{} vertices, {} edges", g.len(), g.edge_count());
            write_out(output.as_deref(), &g.to_json(None))
        }
        Command::Transform { graph, output, op } => {
            let g = load_graph(&graph)?.geometric("transform")?;
            let out = match op {
                TransformOp::Trim { r2 } => trim(&g, &parse_field(&r2)?)?,
                TransformOp::Circle => circle(&g),
                TransformOp::Spindle { u, v } => spindle(&g, u, v)?,
                TransformOp::Reduce { tau, certificate } => {
                    let cert = load_certificate(&certificate)?;
                    let tau = parse_rational(&tau)?;
                    let r = reduce(&g, &cert, &tau)?;
                    eprintln!(
                        "epsilon = {} ({:.6}); (1 - epsilon) alpha*(reduced) <= alpha*(input)",
                        r.epsilon,
                        r.epsilon.to_f64().unwrap_or(f64::NAN)
                    );
                    r.graph
                }
            };
            eprintln!("{} vertices, {} edges", out.len(), out.edge_count());
            write_out(output.as_deref(), &out.to_json(None))
        }
        Command::Alphastar {
            graph,
            orbits,
            threads,
            heuristic_rounds,
            seed,
            time_limit,
            output,
        } => {
            if threads == 0 {
                return Err(CliError::Usage("--threads must be at least 1".into()));
            }
            let loaded = load_graph(&graph)?;
            let o = orbits_for(&loaded, orbits);
            let opts = AlphaStarOptions {
                heuristic_rounds,
                seed,
                deadline: time_limit.map(|s| Instant::now() + Duration::from_secs(s)),
                orbit_generators: o.witnesses.clone(),
                ..Default::default()
            };
            let cert = solve(loaded.adjacency(), &o.partition, &opts)?;
            println!("{}", report_bounds(&cert));
            if let Some(p) = output {
                write_out(Some(&p), &cert.to_json())?;
            }
            Ok(())
        }
        Command::Verify { graph, certificate } => {
            let loaded = load_graph(&graph)?;
            let cert = load_certificate(&certificate)?;
            verify_certificate(loaded.adjacency(), &cert)?;
            println!("certificate valid: alpha* = {}", cert.alpha_star);
            Ok(())
        }
        Command::Pick {
            graph,
            certificate,
            all_vertices,
        } => {
            let g = load_graph(&graph)?.geometric("pick")?;
            let cert = load_certificate(&certificate)?;
            let (u, v) = pick_spindling_pair(&g, &cert, !all_vertices)?;
            println!("{u} {v}");
            Ok(())
        }
        Command::ReproduceTheorem2 {
            quick,
            points,
            heuristic_rounds,
            seed,
            time_limit,
            output,
        } => {
            let pts = match points {
                Some(p) => load_points(&p)?,
                None => final_102(),
            };
            let g = if quick {
                UDGraph::build(pts)
            } else {
                graph_from_sector(&pts)?
            };
            eprintln!("graph: {} vertices, {} edges", g.len(), g.edge_count());
            let o = geometric_orbits(&g);
            eprintln!("{} orbits", o.partition.num_orbits());
            let opts = AlphaStarOptions {
                heuristic_rounds,
                seed,
                deadline: time_limit.map(|s| Instant::now() + Duration::from_secs(s)),
                orbit_generators: o.witnesses.clone(),
                ..Default::default()
            };
            let cert = solve(&g, &o.partition, &opts)?;
            verify_certificate(&g, &cert)?;
            println!("{}", report_bounds(&cert));
            let path = output.unwrap_or_else(|| {
                let dir = std::env::var_os("UDG_SCRATCH").unwrap_or_else(|| ".".into());
                PathBuf::from(dir).join(if quick { "sector102.json" } else { "theorem2.json" })
            });
            write_out(Some(&path), &cert.to_json())?;
            if !quick {
                let m1 = Rational::new(25646.into(), 100000.into());
                let chi = Rational::new(38992.into(), 10000.into());
                if cert.alpha_star > m1 || cert.chi_f < chi {
                    return Err(CliError::BoundFailed(format!(
                        "alpha* = {} misses the bound 0.25646",
                        cert.alpha_star
                    )));
                }
                println!("m1(R^2) <= 0.25646 and chi_f(R^2) >= 3.8992 certified");
            }
            Ok(())
        }
        Command::Export {
            graph,
            format,
            certificate,
            output,
        } => {
            let loaded = load_graph(&graph)?;
            let text = match format {
                Format::Dimacs => to_dimacs(loaded.adjacency()),
                Format::Json => match loaded {
                    Loaded::Geometric(g, orbits) => g.to_json(orbits.as_deref()),
                    Loaded::Abstract(_) => {
                        return Err(CliError::Usage("JSON export needs coordinates".into()))
                    }
                },
                Format::Svg => {
                    let g = loaded.geometric("SVG export")?;
                    let weights = match certificate {
                        Some(p) => {
                            let cert = load_certificate(&p)?;
                            verify_certificate(&g, &cert)?;
                            Some(cert.weights.per_vertex(&cert.orbits))
                        }
                        None => None,
                    };
                    to_svg(&g, weights.as_deref())
                }
            };
            write_out(output.as_deref(), &text)
        }
    }
}

fn orbits_for(g: &Loaded, mode: OrbitMode) -> Orbits {
    let n = g.adjacency().order();
    match (mode, g) {
        (OrbitMode::None, _) => Orbits {
            partition: OrbitPartition::singletons(n),
            witnesses: Vec::new(),
        },
        (OrbitMode::Geometric, Loaded::Geometric(u, _)) => geometric_orbits(u),
        (OrbitMode::Full, Loaded::Geometric(u, _)) => automorphism_orbits(u, ORBIT_BUDGET),
        // Without coordinates the only symmetry source is the graph itself.
        (_, Loaded::Abstract(s)) => automorphism_orbits_seeded(s, Vec::new(), ORBIT_BUDGET)
            .unwrap_or_else(|_| Orbits {
                partition: OrbitPartition::singletons(n),
                witnesses: Vec::new(),
            }),
    }
}

fn solve(
    g: &dyn Adjacency,
    orbits: &OrbitPartition,
    opts: &AlphaStarOptions,
) -> Result<AlphaStarCertificate> {
    let r = run(g, orbits, opts)?;
    match r.outcome {
        Outcome::Certified(c) => Ok(*c),
        Outcome::Stopped { optlow, optup, .. } => {
            let up = optup.map_or("none".to_string(), |u| format!("{u} ({:.8})", u.to_f64().unwrap_or(f64::NAN)));
            Err(CliError::Infeasible(format!(
                "time limit reached after {} iterations: {} <= alpha* <= {}",
                r.trace.len(),
                optlow,
                up
            )))
        }
    }
}
