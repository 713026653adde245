use monogamy::bounds::{EntanglementProfile, Family};

/// `t_i^β ≥ e_i^β + a_i t_{i+1}^β` for head steps and
/// `t_j^β ≥ t_{j+1}^β + b_j e_j^β` for tail steps, unrolled from the end.
pub fn recursion_oracle(
    p: &EntanglementProfile,
    family: Family,
    beta: f64,
    k: f64,
    m: usize,
) -> f64 {
    let e = p.pairwise();
    let t = p.tails();
    let last = e.len() - 1;
    let base = match family {
        Family::PowerSum => 1.0,
        Family::HalfBeta => beta / 2.0,
        Family::Fei => 2f64.powf(beta / 2.0) - 1.0,
        Family::Ylm => ((1.0 + k).powf(beta / 2.0) - 1.0) / k.powf(beta / 2.0),
        Family::Tao => 2f64.powf(beta / 2.0),
        Family::New => ((1.0 + k).powf(beta / 2.0) - 1.0) / k.powf(beta / 2.0) + k.powf(beta / 2.0),
    };
    let ratio_family = matches!(family, Family::Tao | Family::New);
    let mut acc = e[last].powf(beta);
    for j in (0..last).rev() {
        let head = j < m;
        let r = if !ratio_family {
            0.0
        } else if head {
            (t[j + 1] / e[j]).powf(beta)
        } else if t[j + 1] == 0.0 {
            0.0
        } else {
            (e[j] / t[j + 1]).powf(beta)
        };
        let w = base - r;
        acc = if head {
            e[j].powf(beta) + w * acc
        } else {
            acc + w * e[j].powf(beta)
        };
    }
    acc
}
