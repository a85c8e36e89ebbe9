use crate::Real;

/// Hypervolume (minimization) of a point set against a reference point, for
/// 2 or 3 objectives. Points that do not strictly dominate the reference in
/// every component contribute nothing. Used as the optimizer's stall metric
/// and for front comparisons.
pub fn hypervolume<F: Real>(points: &[Vec<F>], reference: &[F]) -> F {
    match reference.len() {
        2 => hv2d(points, reference),
        3 => hv3d(points, reference),
        m => panic!("hypervolume supports 2 or 3 objectives, got {m}"),
    }
}

fn clipped<F: Real>(points: &[Vec<F>], reference: &[F]) -> Vec<Vec<F>> {
    points
        .iter()
        .filter(|p| p.iter().zip(reference).all(|(a, r)| a < r))
        .cloned()
        .collect()
}

fn hv2d<F: Real>(points: &[Vec<F>], reference: &[F]) -> F {
    let mut pts = clipped(points, reference);
    pts.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap());
    let mut area = F::zero();
    let mut ceiling = reference[1];
    for p in &pts {
        if p[1] < ceiling {
            area = area + (reference[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    area
}

fn hv3d<F: Real>(points: &[Vec<F>], reference: &[F]) -> F {
    let mut pts = clipped(points, reference);
    pts.sort_by(|a, b| a[2].partial_cmp(&b[2]).unwrap());
    let ref2d = [reference[0], reference[1]];
    let mut volume = F::zero();
    let mut active: Vec<Vec<F>> = Vec::new();
    let mut i = 0;
    while i < pts.len() {
        let z = pts[i][2];
        while i < pts.len() && pts[i][2] == z {
            active.push(vec![pts[i][0], pts[i][1]]);
            i += 1;
        }
        let z_next = if i < pts.len() { pts[i][2] } else { reference[2] };
        volume = volume + hv2d(&active, &ref2d) * (z_next - z);
    }
    volume
}
