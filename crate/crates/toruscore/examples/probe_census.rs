use std::collections::BTreeMap;
use toruscore::cover::double_covers;
use toruscore::exterior::knot_exterior;
use toruscore::fixtures::{solid_torus_fan, Label};
use toruscore::homology::{chain_complex, homology_groups, rotation_number};
use toruscore::KnotLoop;

fn main() {
    let k: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let max_len: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(8);
    let b = solid_torus_fan(k);
    let sk = b.triangulation.skeleton().unwrap();

    // Interior labels only: columns 0..4, levels 0..k.
    let mut nodes: Vec<Label> = Vec::new();
    for c in 0..4usize {
        for l in 0..k {
            nodes.push((c, l));
        }
    }
    let id: BTreeMap<Label, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    // adjacency: (neighbor id, edge class, ascent)
    let mut adj: Vec<Vec<(usize, usize, i32)>> = vec![Vec::new(); nodes.len()];
    let disk_edges = [(0,1),(0,2),(0,3),(1,2),(2,3),(1,3)];
    let mut add = |a: Label, bb: Label, asc: i32, adj: &mut Vec<Vec<(usize, usize, i32)>>| {
        if let (Some(&i), Some(&j)) = (id.get(&a), id.get(&(bb.0, bb.1 % k))) {
            if let Some(e) = b.edge_between(&sk, a, bb) {
                adj[i].push((j, e, asc));
                adj[j].push((i, e, -asc));
            }
        }
    };
    for l in 0..k {
        for &(x, y) in &disk_edges {
            add((x, l), (y, l), 0, &mut adj);
            add((x, l), (y, l + 1), 1, &mut adj);
        }
        for c in 0..4 {
            add((c, l), (c, l + 1), 1, &mut adj);
        }
    }

    // All simple cycles with |net ascent| == k, canonical: start at the
    // minimal node, second node id < last node id.
    let mut cycles: Vec<Vec<usize>> = Vec::new(); // edge class sequences
    let n = nodes.len();
    for s in 0..n {
        let mut path = vec![s];
        let mut edges: Vec<usize> = Vec::new();
        let mut used = vec![false; n];
        used[s] = true;
        dfs(s, s, 0, &mut path, &mut edges, &mut used, &adj, max_len, &mut cycles, k as i32);
    }
    println!("candidates with winding 1: {}", cycles.len());

    let mut tested = 0;
    let mut hits = 0;
    // longest first: more room to knot
    cycles.sort_by_key(|c| std::cmp::Reverse(c.len()));
    for cyc in &cycles {
        let Ok(knot) = KnotLoop::new(&sk, cyc.clone()) else { continue };
        let Ok(r) = rotation_number(&b.triangulation, &knot) else { continue };
        if r != 1.into() { continue; }
        let Ok(ext) = knot_exterior(&b.triangulation, &knot) else { continue };
        if ext.subdivisions != 0 { continue; }
        tested += 1;
        let covers = double_covers(&ext.tri).unwrap();
        let mut torsions = Vec::new();
        for c in &covers {
            let csk = c.skeleton().unwrap();
            let h = homology_groups(&chain_complex(c, &csk));
            torsions.push((h[1].free_rank, h[1].torsion.clone()));
        }
        if torsions.iter().any(|(_, t)| !t.is_empty()) {
            hits += 1;
            println!("TORSION len={} ext={} covers={:?} edges={:?}", cyc.len(), ext.tri.size(), torsions, cyc);
            let labels: Vec<String> = walk_labels(&b, &sk, cyc);
            println!("  labels: {}", labels.join(" "));
            if hits >= 5 { break; }
        }
    }
    println!("level-0 exteriors tested: {tested}, torsion hits: {hits}");
}

fn walk_labels(b: &toruscore::fixtures::ProductBuild, sk: &toruscore::Skeleton, cyc: &[usize]) -> Vec<String> {
    let knot = KnotLoop::new(sk, cyc.to_vec()).unwrap();
    knot.vertices().iter().map(|v| {
        for c in 0..4usize {
            for l in 0..b.sections {
                if b.vertex_class(sk, (c, l)) == *v {
                    return format!("({c},{l})");
                }
            }
        }
        format!("v{v}")
    }).collect()
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    s: usize,
    cur: usize,
    ascent: i32,
    path: &mut Vec<usize>,
    edges: &mut Vec<usize>,
    used: &mut Vec<bool>,
    adj: &[Vec<(usize, usize, i32)>],
    max_len: usize,
    out: &mut Vec<Vec<usize>>,
    k: i32,
) {
    for &(next, e, asc) in &adj[cur] {
        if next == s && path.len() >= 2 {
            if (ascent + asc).abs() == k && path[1] < *path.last().unwrap() && !edges.contains(&e) {
                let mut cyc = edges.clone();
                cyc.push(e);
                out.push(cyc);
            }
            continue;
        }
        if next <= s || used[next] || path.len() >= max_len || edges.contains(&e) {
            continue;
        }
        used[next] = true;
        path.push(next);
        edges.push(e);
        dfs(s, next, ascent + asc, path, edges, used, adj, max_len, out, k);
        edges.pop();
        path.pop();
        used[next] = false;
    }
}
