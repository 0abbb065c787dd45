use tilingforge::sparse::*;
use tilingforge::solver::*;
use tilingforge::tile::Patch;

fn main() {
    let sg = build_tau();
    let (cx, cy) = (3u32, 3u32);
    let k = 6u32;
    let mut req = SolveRequest::new(&sg.tau, k, k);
    req.pins = Patch::new((-(cx as i64), -(cy as i64)), k, k);
    req.pins.set(cx, cy, sg.corner_id).unwrap();
    req.limit = Some(6);
    let out = enumerate(&req).unwrap();
    println!("{} solutions (status {:?})", out.solutions.len(), out.status);
    let expect = beta_patch(&sg, k, k, (cx, cy)).unwrap();
    for (i, sol) in out.solutions.iter().enumerate() {
        let diffs: Vec<_> = sol.cells.iter()
            .filter(|(pos, id)| expect.cells.get(pos) != Some(id))
            .collect();
        println!("solution {i}: {} diffs from beta", diffs.len());
        for ((x, y), id) in diffs.iter().take(12) {
            let (a, b) = tau_components(**id);
            let (ea, eb) = tau_components(*expect.cells.get(&(*x

, *y)).unwrap());
            println!("  ({x},{y}): got ({a},{b}) want ({ea},{eb})");
        }
    }
}
