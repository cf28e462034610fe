use clap::Subcommand;
use serde_json::json;

use carleman::equivariant::{
    decompose_equivariant, equivariant_module_generators, hf_cross_check, EquivariantMap,
    RepresentationPair,
};
use carleman::invariant::invariant_generators;
use carleman::poly::Polynomial;

use crate::groups::{parse_group, read_matrix_list, GroupSpec};
use crate::report::Report;
use crate::CliError;

use super::{parse_poly, poly_strings, Ctx};

#[derive(Subcommand)]
pub enum EquivCmd {
    /// Print module generators for the equivariant polynomial maps.
    Generators {
        /// Source group spec; also the target action unless --rep2 is given.
        #[arg(long)]
        group: String,
        /// JSON file of target matrices, one per source generator, in order.
        #[arg(long)]
        rep2: Option<String>,
        #[arg(long, default_value_t = 1024)]
        max_order: usize,
    },
    /// Decompose an equivariant map over the module generators with
    /// invariant coefficients.
    Decompose {
        #[arg(long)]
        group: String,
        #[arg(long)]
        rep2: Option<String>,
        /// Map components inline, separated by semicolons, e.g. "x1^2; x2^2".
        #[arg(long)]
        map: Option<String>,
        /// JSON file holding an array of component strings.
        #[arg(long)]
        map_file: Option<String>,
        /// Also run the independent dual-variable route and report agreement.
        #[arg(long)]
        cross_check: bool,
        #[arg(long, default_value_t = 1024)]
        max_order: usize,
    },
}

fn build_pair(g: &GroupSpec, rep2: Option<&str>, max_order: usize) -> Result<RepresentationPair, CliError> {
    match rep2 {
        None => Ok(RepresentationPair::diagonal(&g.group)),
        Some(path) => {
            let targets = read_matrix_list(path)?;
            if targets.len() != g.generators.len() {
                return Err(CliError::usage(format!(
                    "{path} holds {} matrices but the group has {} generators",
                    targets.len(),
                    g.generators.len()
                )));
            }
            let pairs: Vec<_> = g.generators.iter().cloned().zip(targets).collect();
            Ok(RepresentationPair::from_generators(&pairs, max_order)?)
        }
    }
}

fn read_components(
    inline: Option<&str>,
    file: Option<&str>,
    nvars: usize,
) -> Result<(Vec<Polynomial>, Vec<String>), CliError> {
    let sources: Vec<String> = match (inline, file) {
        (Some(_), Some(_)) => {
            return Err(CliError::usage("give the map inline or as a file, not both"))
        }
        (None, None) => return Err(CliError::usage("a map is required: --map or --map-file")),
        (Some(s), None) => s.split(';').map(|t| t.trim().to_string()).collect(),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("cannot parse component list from {path}: {e}")))?
        }
    };
    let mut comps = Vec::with_capacity(sources.len());
    for s in &sources {
        comps.push(parse_poly(s, nvars)?);
    }
    Ok((comps, sources))
}

fn generator_json(gens: &[EquivariantMap]) -> serde_json::Value {
    json!(gens
        .iter()
        .map(|g| json!({
            "components": poly_strings(g.components()),
            "degree": g.degree(),
        }))
        .collect::<Vec<_>>())
}

fn generator_text(gens: &[EquivariantMap]) -> String {
    let mut s = String::new();
    for (j, g) in gens.iter().enumerate() {
        let comps = poly_strings(g.components()).join(", ");
        s.push_str(&format!("P{} = ({})   degree {}\n", j + 1, comps, g.degree()));
    }
    s
}

pub fn run(cmd: &EquivCmd, ctx: &Ctx) -> Result<(Report, String), CliError> {
    match cmd {
        EquivCmd::Generators { group, rep2, max_order } => {
            let g = parse_group(group, *max_order)?;
            let pair = build_pair(&g, rep2.as_deref(), *max_order)?;
            let sigma = invariant_generators(pair.source_group())?;
            let gens = equivariant_module_generators(&pair)?;
            let mut inputs = json!({"group": group, "max_order": max_order, "seed": ctx.seed});
            if let Some(path) = rep2 {
                inputs["rep2"] = json!(path);
            }
            let outputs = json!({
                "source_dim": pair.source_dim(),
                "target_dim": pair.target_dim(),
                "order": pair.order(),
                "sigma": poly_strings(sigma.generators()),
                "generators": generator_json(&gens),
            });
            let mut text = format!(
                "actions of order {} on {} -> {} variables\n",
                pair.order(),
                pair.source_dim(),
                pair.target_dim()
            );
            for (i, p) in sigma.generators().iter().enumerate() {
                text.push_str(&format!("s{} = {}\n", i + 1, p));
            }
            text.push_str(&generator_text(&gens));
            Ok((Report::new("equiv generators", inputs, outputs, None), text))
        }
        EquivCmd::Decompose { group, rep2, map, map_file, cross_check, max_order } => {
            let g = parse_group(group, *max_order)?;
            let pair = build_pair(&g, rep2.as_deref(), *max_order)?;
            let (components, sources) =
                read_components(map.as_deref(), map_file.as_deref(), pair.source_dim())?;
            let f = EquivariantMap::new(&pair, components)?;
            let sigma = invariant_generators(pair.source_group())?;
            let gens = equivariant_module_generators(&pair)?;
            let coeffs = decompose_equivariant(&f, &sigma, &gens)?;

            let mut back = vec![Polynomial::zero(pair.source_dim()); pair.target_dim()];
            for (l, gen) in coeffs.iter().zip(&gens) {
                let in_x = l.compose(sigma.generators())?;
                for (t, c) in gen.components().iter().enumerate() {
                    back[t] = back[t].add(&c.mul(&in_x));
                }
            }
            if back.as_slice() != f.components() {
                return Err(CliError::domain("decomposition does not reproduce the input"));
            }

            let mut inputs = json!({
                "group": group, "map": sources, "max_order": max_order, "seed": ctx.seed
            });
            if let Some(path) = rep2 {
                inputs["rep2"] = json!(path);
            }
            let mut outputs = json!({
                "sigma": poly_strings(sigma.generators()),
                "generators": generator_json(&gens),
                "coefficients": coeffs.iter().map(|l| l.display_with("s")).collect::<Vec<_>>(),
                "round_trip": true,
            });
            let mut text = String::new();
            for (i, p) in sigma.generators().iter().enumerate() {
                text.push_str(&format!("s{} = {}\n", i + 1, p));
            }
            text.push_str(&generator_text(&gens));
            text.push_str(&format!("f = ({})\n", poly_strings(f.components()).join(", ")));
            for (j, l) in coeffs.iter().enumerate() {
                text.push_str(&format!("L{} = {}\n", j + 1, l.display_with("s")));
            }
            text.push_str("round trip: exact\n");

            if *cross_check {
                inputs["cross_check"] = json!(true);
                let hf = hf_cross_check(&f)?;
                let agree =
                    hf.reconstruct(pair.source_dim(), pair.target_dim()).as_slice() == f.components();
                if !agree {
                    return Err(CliError::domain("dual-variable route does not reproduce the input"));
                }
                outputs["cross_check"] = json!({"maps": hf.maps.len(), "reconstructs": true});
                text.push_str(&format!(
                    "independent dual-variable route: {} terms, reconstructs exactly\n",
                    hf.maps.len()
                ));
            }
            Ok((Report::new("equiv decompose", inputs, outputs, None), text))
        }
    }
}
