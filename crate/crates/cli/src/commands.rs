//! One function per analysis command. Each returns a finished report;
//! input problems come back as [`InputError`].

use std::sync::Arc;

use anyhow::Result;
use protoshape::homology::{homology, HomologyGroups};
use protoshape::hypercover::{cech_hypercover, gamma, mccord_hypercover, verify_hyper, Hypercovering};
use protoshape::proset::{constant_value, pi_proset, ProSetError};
use protoshape::simplicial::{cech_nerve, normalized_chains, order_complex, T0Mode};
use protoshape::space::{FiniteSpace, OpenCover};
use protoshape::TruncSimplicialSet;
use serde_json::{json, Value};

use crate::documents::{is_axiom_failure, InputError, SpaceDocument};
use crate::report::{complex_json, homology_json, Report, SpaceSummary, Status, Verdict};

/// A space that passed the point cap, with its digest.
pub struct Input {
    pub space: Arc<FiniteSpace>,
    pub digest: String,
    /// Bound on points, also used for partition enumeration.
    pub max_points: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Cech,
    Mccord,
}

fn chains_homology(s: &TruncSimplicialSet, d: usize) -> Result<HomologyGroups> {
    Ok(homology(&normalized_chains(s, d)?, d)?)
}

fn ids(space: &FiniteSpace, sets: &[protoshape::PointSet]) -> Vec<Vec<String>> {
    sets.iter().map(|s| space.ids(s)).collect()
}

pub fn validate(bytes: &[u8], digest: String) -> Result<Report> {
    let doc = SpaceDocument::parse(bytes)?;
    match doc.build() {
        Ok(space) => {
            let mut r = Report::new("validate", digest, SpaceSummary::of(&space));
            let opens = space.open_sets();
            r.summary.push(format!("{} open sets", opens.len()));
            r.verdicts.push(Verdict::check("topology", true, "the data define a topology"));
            r.details = json!({ "open_sets": opens.len(), "min_open": SpaceDocument::from_space(&space, None).min_open });
            Ok(r.finish())
        }
        Err(e) if is_axiom_failure(&e) => {
            let summary = SpaceSummary { points: doc.points.clone(), t0: None };
            let mut r = Report::new("validate", digest, summary);
            r.verdicts.push(Verdict::check("topology", false, e.to_string()));
            r.details = json!({});
            Ok(r.finish())
        }
        Err(e) => Err(InputError::new("invalid_space", e.to_string()).into()),
    }
}

pub fn analyze(input: &Input) -> Result<Report> {
    let x = &input.space;
    let mut r = Report::new("analyze", input.digest.clone(), SpaceSummary::of(x));
    let preorder: Vec<[String; 2]> = x
        .specialization_preorder()
        .strict_pairs()
        .into_iter()
        .map(|(a, b)| [x.points()[a].clone(), x.points()[b].clone()])
        .collect();
    let components = x.connected_components();
    let k = components.blocks().len();
    let partitions = bell(k);
    r.summary.push(format!("{k} connected components, {partitions} open partitions"));

    let maximum = match pi_proset(x, input.max_points) {
        Ok(pi) => match constant_value(pi.proset()) {
            Ok(cv) => {
                let top = &pi.partitions()[cv.top];
                let cofinal = cv.is_cofinal_in(pi.proset());
                r.verdicts.push(Verdict::check(
                    "partitions_have_maximum",
                    cofinal,
                    format!("{} open partitions, maximum has {} blocks", pi.partitions().len(), cv.elements.len()),
                ));
                let same = top.canonical() == components.canonical();
                r.verdicts.push(Verdict::check(
                    "maximum_is_components",
                    same,
                    if same { "the finest open partition is the component partition" } else { "maximum differs from the components" },
                ));
                Value::from(ids(x, top.blocks()))
            }
            Err(e) => {
                r.verdicts.push(Verdict::check("partitions_have_maximum", false, e.to_string()));
                Value::Null
            }
        },
        Err(e @ ProSetError::TooManyPartitions { .. }) => {
            r.verdicts.push(Verdict::new("partitions_have_maximum", Status::Skipped, e.to_string()));
            Value::Null
        }
        Err(e) => return Err(e.into()),
    };
    r.details = json!({
        "preorder": preorder,
        "components": ids(x, components.blocks()),
        "open_sets": x.open_sets().len(),
        "open_partitions": partitions,
        "partition_maximum": maximum,
    });
    Ok(r.finish())
}

// Open partitions correspond to set partitions of the components.
fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty row")];
        for v in &row {
            next.push(next.last().expect("nonempty row") + v);
        }
        row = next;
    }
    row[0]
}

fn signature_report(command: &str, input: &Input, d: usize) -> Report {
    let mut r = Report::new(command, input.digest.clone(), SpaceSummary::of(&input.space));
    r.max_degree = Some(d);
    r
}

pub fn mccord(input: &Input, d: usize) -> Result<Report> {
    let mut r = signature_report("mccord", input, d);
    let k = order_complex(&input.space.specialization_preorder(), d + 1, T0Mode::Quotient)?;
    let h = chains_homology(&k.set, d)?;
    r.summary.push(format!("mccord {h}"));
    r.details = json!({
        "t0_quotient_applied": k.quotient_applied,
        "complex": complex_json(&k.set),
        "homology": homology_json(&h),
    });
    Ok(r.finish())
}

pub fn nerve(input: &Input, cover: &OpenCover, d: usize, command: &str) -> Result<Report> {
    let mut r = signature_report(command, input, d);
    let n = cech_nerve(cover, d + 1)?;
    let h = chains_homology(&n, d)?;
    r.summary.push(format!("{command} {h}"));
    let mut details = json!({
        "cover": { "labels": cover.labels(), "members": ids(&input.space, cover.members()) },
        "complex": complex_json(&n),
        "homology": homology_json(&h),
    });
    if command == "shape" {
        details["cofinality"] = "the cover by minimal open sets refines every open cover".into();
    }
    r.details = details;
    Ok(r.finish())
}

fn qsh_parts(space: &Arc<FiniteSpace>, d: usize) -> Result<(Hypercovering, TruncSimplicialSet, HomologyGroups)> {
    let h = mccord_hypercover(space, d + 1)?;
    let g = gamma(&h)?;
    let groups = chains_homology(&g.set, d)?;
    Ok((h, (*g.set).clone(), groups))
}

pub fn qsh(input: &Input, d: usize) -> Result<Report> {
    let mut r = signature_report("qsh", input, d);
    let (h, g, groups) = qsh_parts(&input.space, d)?;
    r.summary.push(format!("qsh {groups}"));
    let pieces: Vec<usize> = (0..=h.depth()).map(|n| h.piece_count(n)).collect();
    r.details = json!({
        "hypercovering": { "kind": "mccord", "pieces": pieces },
        "components": "each level of a finite space hypercovering has a set of components, so no pro-structure remains",
        "complex": complex_json(&g),
        "homology": homology_json(&groups),
    });
    Ok(r.finish())
}

pub fn compare(input: &Input, d: usize) -> Result<Report> {
    let x = &input.space;
    let mut r = signature_report("compare", input, d);
    let k = order_complex(&x.specialization_preorder(), d + 1, T0Mode::Quotient)?;
    let mccord = chains_homology(&k.set, d)?;
    let shape = chains_homology(&cech_nerve(&OpenCover::finest(x), d + 1)?, d)?;
    let (_, _, qsh) = qsh_parts(x, d)?;
    r.verdicts.push(Verdict::check(
        "qsh_equals_mccord",
        qsh == mccord,
        format!("qsh {qsh}; mccord {mccord}"),
    ));
    let same_shape = shape == qsh;
    r.verdicts.push(Verdict::new(
        "shape_equals_qsh",
        if same_shape { Status::Pass } else { Status::Noted },
        if same_shape {
            format!("shape {shape}")
        } else {
            format!("shape {shape} differs from qsh {qsh}")
        },
    ));
    for (name, h) in [("mccord", &mccord), ("shape", &shape), ("qsh", &qsh)] {
        r.summary.push(format!("{name:<6} {h}"));
    }
    let table: Vec<Value> = (0..=d)
        .map(|n| {
            json!({
                "degree": n,
                "mccord": mccord.degree(n).to_string(),
                "shape": shape.degree(n).to_string(),
                "qsh": qsh.degree(n).to_string(),
            })
        })
        .collect();
    r.details = json!({
        "signatures": { "mccord": homology_json(&mccord), "shape": homology_json(&shape), "qsh": homology_json(&qsh) },
        "table": table,
    });
    Ok(r.finish())
}

pub fn hypercheck(input: &Input, kind: Kind, cover: Option<&OpenCover>, depth: usize) -> Result<Report> {
    let x = &input.space;
    let mut r = Report::new("hypercheck", input.digest.clone(), SpaceSummary::of(x));
    let h = match kind {
        Kind::Cech => cech_hypercover(cover.expect("Čech check needs a cover"), depth)?,
        Kind::Mccord => mccord_hypercover(x, depth)?,
    };
    let report = verify_hyper(&h);
    r.verdicts.push(Verdict::check(
        "level_0_covers",
        report.covers_base,
        if report.covers_base { "degree 0 pieces cover the space".to_string() } else { format!("uncovered points {:?}", report.uncovered_points) },
    ));
    let witness = |w: &Option<(Vec<String>, String)>| -> Value {
        match w {
            Some((faces, point)) => json!({ "faces": faces, "point": point }),
            None => Value::Null,
        }
    };
    let mut levels = Vec::new();
    for l in &report.levels {
        let n = l.degree;
        let covering_detail = match &l.uncovered {
            Some((faces, p)) => format!("point {p} over {} hit by no piece", faces.join(" ")),
            None => format!("{} matching points covered", l.matching_points),
        };
        r.verdicts.push(Verdict::check(format!("level_{n}_covering"), l.covering, covering_detail));
        // only Čech hypercoverings are claimed to match their matching objects exactly
        let bijective_status = match (l.bijective, kind) {
            (true, _) => Status::Pass,
            (false, Kind::Cech) => Status::Fail,
            (false, Kind::Mccord) => Status::Noted,
        };
        r.verdicts.push(Verdict::new(
            format!("level_{n}_bijective"),
            bijective_status,
            format!("{} piece points over {} matching points", l.piece_points, l.matching_points),
        ));
        levels.push(json!({
            "degree": n,
            "matching_points": l.matching_points,
            "piece_points": l.piece_points,
            "covering": l.covering,
            "bijective": l.bijective,
            "uncovered": witness(&l.uncovered),
            "overcovered": witness(&l.overcovered),
        }));
    }
    let pieces: Vec<usize> = (0..=depth).map(|n| h.piece_count(n)).collect();
    r.summary.push(format!(
        "{} hypercovering to depth {depth}: covering {}, bijective {}",
        match kind {
            Kind::Cech => "Čech",
            Kind::Mccord => "McCord",
        },
        report.all_covering(),
        report.all_bijective()
    ));
    let mut details = json!({
        "kind": match kind { Kind::Cech => "cech", Kind::Mccord => "mccord" },
        "depth": depth,
        "pieces": pieces,
        "covers_base": report.covers_base,
        "uncovered_points": report.uncovered_points,
        "levels": levels,
    });
    if let Some(c) = cover.filter(|_| kind == Kind::Cech) {
        details["cover"] = json!({ "labels": c.labels(), "members": ids(x, c.members()) });
    }
    r.details = details;
    Ok(r.finish())
}
