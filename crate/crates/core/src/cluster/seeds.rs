//! Named seeds: type A paths and the categorification seeds for sl2/sl3.
//! Infinite quivers are cut to a finite window with frozen boundary.

use super::{ClusterError, Quiver, Seed, Vertex};
use crate::vars::PsiWeight;

pub const SEED_NAMES: [&str; 8] = [
    "sl2_CZminus",
    "sl2_CZ",
    "sl3_CZminus",
    "sl3_CM",
    "sl2_Ohat_plus",
    "Gamma_inf_sl2",
    "Gamma_inf_sl3",
    "Gamma_inf_prime_sl2",
];

/// The path `1 → 2 → … → n` with no frozen vertices.
pub fn type_a_seed(n: usize) -> Seed {
    let mut q = Quiver::new((1..=n).map(|id| vertex(id, false, String::new())).collect());
    for i in 1..n {
        q.add_arrow(i, i + 1).expect("valid ids");
    }
    Seed::initial(q)
}

fn vertex(id: usize, frozen: bool, label: String) -> Vertex {
    Vertex { id, frozen, label, psi: None }
}

/// `(1 - zq^{s})` with the conventional rendering of `s = 0`.
fn factor(s: i64) -> String {
    match s {
        0 => "(1 - z)".into(),
        1 => "(1 - zq)".into(),
        _ => format!("(1 - zq^{{{s}}})"),
    }
}

fn drinfeld(exps: impl Iterator<Item = i64>) -> String {
    exps.map(factor).collect()
}

fn psi_label(node: usize, shift: i64, e: i64) -> String {
    if e == 1 {
        format!("[L(Psi_{{{node},{shift}}})]")
    } else {
        format!("[L(Psi_{{{node},{shift}}}^{{{e}}})]")
    }
}

fn psi_vertex(id: usize, frozen: bool, node: usize, shift: i64, e: i64) -> Vertex {
    Vertex { id, frozen, label: psi_label(node, shift, e), psi: Some(PsiWeight::psi(node, shift, e)) }
}

fn build(vertices: Vec<Vertex>, arrows: &[(usize, usize)]) -> Seed {
    let mut q = Quiver::new(vertices);
    for &(a, b) in arrows {
        q.add_arrow(a, b).expect("valid ids");
    }
    Seed::initial(q)
}

/// Seed by name. `length` is the number of vertices kept along the
/// infinite direction (columns for the two-row sl3 quivers) and is ignored
/// for `sl3_CM`.
pub fn named_seed(name: &str, length: usize) -> Result<Seed, ClusterError> {
    if name != "sl3_CM" && length == 0 {
        return Err(ClusterError::InvalidSeed("window length must be at least 1".into()));
    }
    let l = length;
    let seed = match name {
        "sl3_CM" => build(
            vec![
                vertex(1, true, "[W_1]".into()),
                vertex(2, false, "[V_1(1)]".into()),
                vertex(3, false, "[V_2(q)]".into()),
                vertex(4, true, "[W_2]".into()),
            ],
            &[(1, 2), (2, 3), (3, 1), (4, 3)],
        ),
        "sl2_CZminus" => {
            let vs = (1..=l)
                .map(|k| vertex(k, k == l, format!("[{}]", drinfeld((0..k as i64).map(|t| -2 * t)))))
                .collect();
            let arrows: Vec<_> = (1..l).map(|k| (k + 1, k)).collect();
            build(vs, &arrows)
        }
        "sl2_CZ" => {
            let vs = (1..=l)
                .map(|k| {
                    let k = k as i64;
                    let (lo, hi) = (-2 * (k / 2), 2 * ((k - 1) / 2));
                    let exps = (0..=(hi - lo) / 2).map(move |t| hi - 2 * t);
                    vertex(k as usize, k as usize == l, format!("[{}]", drinfeld(exps)))
                })
                .collect();
            let arrows: Vec<_> = (1..l).map(|k| if k % 2 == 1 { (k + 1, k) } else { (k, k + 1) }).collect();
            build(vs, &arrows)
        }
        "sl3_CZminus" => {
            // W_r^{(1)} has id 2r-1, W_r^{(2)} has id 2r.
            let mut vs = Vec::new();
            for r in 1..=l {
                let ri = r as i64;
                let p1 = drinfeld((0..ri).map(|t| -2 * t));
                let p2 = drinfeld((0..ri).map(|t| -2 * t - 1));
                vs.push(vertex(2 * r - 1, r == l, format!("[W_{r}^{{(1)}}] = [({p1}, 1)]")));
                vs.push(vertex(2 * r, r == l, format!("[W_{r}^{{(2)}}] = [(1, {p2})]")));
            }
            let mut arrows = Vec::new();
            for r in 1..=l {
                arrows.push((2 * r - 1, 2 * r));
                if r < l {
                    arrows.push((2 * r + 1, 2 * r - 1));
                    arrows.push((2 * r + 2, 2 * r));
                    arrows.push((2 * r, 2 * r + 1));
                }
            }
            build(vs, &arrows)
        }
        "sl2_Ohat_plus" => {
            let vs = (1..=l)
                .map(|r| {
                    let ri = r as i64;
                    Vertex {
                        id: r,
                        frozen: r == l,
                        label: format!("[L^b(q^{{-{r}}}(1 - q^{{{}}}z)/(1 - z))]", 2 * ri),
                        psi: Some(PsiWeight::from_triples(&[(1, 2 * ri, 1), (1, 0, -1)])),
                    }
                })
                .collect();
            let arrows: Vec<_> = (1..l).map(|r| (r + 1, r)).collect();
            build(vs, &arrows)
        }
        "Gamma_inf_sl2" => {
            let t0 = -((l as i64 - 1) / 2);
            let vs = (1..=l).map(|k| psi_vertex(k, k == 1 || k == l, 1, 2 * (t0 + k as i64 - 1), 1)).collect();
            let arrows: Vec<_> = (1..l).map(|k| (k, k + 1)).collect();
            build(vs, &arrows)
        }
        "Gamma_inf_prime_sl2" => {
            let left = l.div_ceil(2);
            let mut vs = Vec::new();
            for k in 1..=l {
                let frozen = k == 1 || k == l;
                if k <= left {
                    vs.push(psi_vertex(k, frozen, 1, 2 * (left - k) as i64, 1));
                } else {
                    vs.push(psi_vertex(k, frozen, 1, -2 * (k - left) as i64, -1));
                }
            }
            let arrows: Vec<_> = (1..l).map(|k| if k == left { (k + 1, k) } else { (k, k + 1) }).collect();
            build(vs, &arrows)
        }
        "Gamma_inf_sl3" => {
            // Column c holds (1, 2t) with id 2c-1 and (2, 2t-1) with id 2c.
            let t0 = -((l as i64 - 1) / 2);
            let mut vs = Vec::new();
            for c in 1..=l {
                let t = t0 + c as i64 - 1;
                let frozen = c == 1 || c == l;
                vs.push(psi_vertex(2 * c - 1, frozen, 1, 2 * t, 1));
                vs.push(psi_vertex(2 * c, frozen, 2, 2 * t - 1, 1));
            }
            let mut arrows = Vec::new();
            for c in 1..=l {
                arrows.push((2 * c - 1, 2 * c));
                if c < l {
                    arrows.push((2 * c - 1, 2 * c + 1));
                    arrows.push((2 * c, 2 * c + 2));
                    arrows.push((2 * c + 2, 2 * c - 1));
                }
            }
            build(vs, &arrows)
        }
        _ => return Err(ClusterError::UnknownSeed(name.to_string())),
    };
    Ok(seed)
}
