//! Reference evaluations written directly from the published expressions,
//! independent of the library code paths.

#![allow(dead_code)]

use hdccic::{ChannelGains, Topology};
use num_rational::Ratio;

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

fn qmax(a: Q, b: Q) -> Q {
    if a > b {
        a
    } else {
        b
    }
}

fn qmin(a: Q, b: Q) -> Q {
    if a < b {
        a
    } else {
        b
    }
}

/// Lines `a + b * gamma` whose pointwise minimum, halved, is the gDoF.
pub fn gdof_lines(alpha: Q, beta: Q, t: Topology) -> Vec<(Q, Q)> {
    let one = q(1, 1);
    let two = q(2, 1);
    let zero = q(0, 1);
    let m = qmax(one, alpha) + qmax(one - alpha, zero);
    let cs = (two, qmax(one, beta) - two);
    let dt = (m, one - m);
    match t {
        Topology::Symmetric => {
            let pv0 = two * qmax(alpha, one - alpha);
            let pv = (pv0, qmax(qmax(alpha, beta), one) - pv0);
            vec![cs, dt, pv]
        }
        Topology::Z => vec![cs, dt],
        Topology::S => vec![(two, -one), (m, qmax(qmax(beta, alpha), one) - m)],
    }
}

/// Exact max over `[0, 1]` of the minimum of the lines, and the smallest
/// maximizer.
pub fn exact_maxmin(lines: &[(Q, Q)]) -> (Q, Q) {
    let zero = q(0, 1);
    let one = q(1, 1);
    let mut cands = vec![zero, one];
    for (i, &(a1, b1)) in lines.iter().enumerate() {
        for &(a2, b2) in &lines[i + 1..] {
            if b1 != b2 {
                let g = (a2 - a1) / (b1 - b2);
                if g >= zero && g <= one {
                    cands.push(g);
                }
            }
        }
    }
    cands.sort();
    let value = |g: Q| lines.iter().map(|&(a, b)| a + b * g).min().unwrap();
    let best = cands.iter().map(|&g| value(g)).max().unwrap();
    // The smallest maximizer is a breakpoint of a concave function, or 0.
    let arg = *cands.iter().find(|&&g| value(g) == best).unwrap();
    (best / q(2, 1), arg)
}

pub fn oracle_gdof(alpha: Q, beta: Q, t: Topology) -> Q {
    exact_maxmin(&gdof_lines(alpha, beta, t)).0
}

pub fn oracle_nocoop(alpha: Q, t: Topology) -> Q {
    let one = q(1, 1);
    let half = q(1, 2);
    let hk = qmax(one - alpha * half, alpha * half);
    match t {
        Topology::Symmetric => qmin(qmin(one, qmax(one - alpha, alpha)), hk),
        _ => qmin(one, hk),
    }
}

pub fn oracle_ideal(alpha: Q, t: Topology) -> Q {
    let half = q(1, 2);
    match t {
        Topology::S => q(1, 1),
        _ => qmax(q(1, 1) - alpha * half, alpha * half),
    }
}

pub fn to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn l(x: f64) -> f64 {
    (1.0 + x).log2()
}

fn div(a: f64, b: f64) -> f64 {
    if b > 0.0 {
        a / b
    } else if a == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

fn ratio(i: f64, s: f64) -> f64 {
    if i > 0.0 {
        i.max(s) / i
    } else {
        (1.0 + s) / (1.0 + i)
    }
}

pub fn oracle_cs(g: &ChannelGains, gamma: f64) -> f64 {
    let (s, c, ip, ic) = (g.s, g.c, g.i_p, g.i_c);
    let a = gamma * l(s + c) + 2.0 * (1.0 - gamma) * l(s);
    let mix = (s.sqrt() + ic.sqrt()).powi(2) + (s.sqrt() + ip.sqrt()).powi(2) + (s + (ip * ic).sqrt()).powi(2);
    let b = gamma * l(s + ip) + (1.0 - gamma) * l(mix);
    2.507 + a.min(b)
}

pub fn oracle_dt(g: &ChannelGains, gamma: f64) -> f64 {
    let (s, c, ip, ic) = (g.s, g.c, g.i_p, g.i_c);
    let a = 3.0 + gamma * l(s) + (1.0 - gamma) * (ratio(ic, s) * (1.0 + (s.sqrt() + ic.sqrt()).powi(2))).log2();
    let b = 2.0 + gamma * l(c + ip.max(s)) + (1.0 - gamma) * (ratio(ip, s) * (1.0 + (s.sqrt() + ip.sqrt()).powi(2))).log2();
    a.min(b)
}

pub fn oracle_pv(g: &ChannelGains, gamma: f64) -> f64 {
    let (s, c, ip, ic) = (g.s, g.c, g.i_p, g.i_c);
    let t1 = div(s, ic);
    let t2 = div(s, ip);
    if t1.is_infinite() || t2.is_infinite() {
        return f64::INFINITY;
    }
    3.5048 + gamma * l(s + c + ip) + (1.0 - gamma) * l(ip + t1) + (1.0 - gamma) * l(ic + t2)
}

fn gamma_prime(x: f64, s: f64, c: f64) -> f64 {
    x / (l(c / (1.0 + s)) + x)
}

/// Published closed forms of the cooperative schemes: `(sum, gamma')`.
pub fn oracle_sym3(s: f64, i: f64, c: f64) -> (f64, f64) {
    let g = gamma_prime(l(i / (1.0 + s).powi(2)), s, c);
    (g * l(s) - l(s / (1.0 + s)) + g * l(c / (1.0 + s)) + 2.0 * (1.0 - g) * l(s), g)
}

pub fn oracle_sym8(s: f64, i: f64, c: f64) -> (f64, f64) {
    let g = gamma_prime(l(s * s / ((1.0 + i).powi(3) + s + s * i)), s, c);
    let v = g * l(s) - g * l(s / (1.0 + s)) + g * l(c / (1.0 + s)) + 2.0 * (1.0 - g) * l(i + s / (1.0 + i))
        - (1.0 - g) * (2.0 * l(i / (1.0 + i)) - l(s / (1.0 + i) + i / (1.0 + i)))
        - (1.0 - g) * l((s * i + i + i * i) / (1.0 + i).powi(2) + s / (1.0 + i));
    (v, g)
}

pub fn oracle_sym10(s: f64, i: f64, c: f64) -> (f64, f64) {
    let g = gamma_prime(l(s * i / ((1.0 + i).powi(2) + s)), s, c);
    let v = g * l(s) - g * l(s / (1.0 + s)) + g * l(c / (1.0 + s)) - (1.0 - g) * l(i) + (1.0 - g) * l(i + s / (1.0 + i))
        - (1.0 - g) * l(i / (1.0 + i))
        + (1.0 - g) * l(i / (1.0 + i) + s);
    (v, g)
}

pub fn oracle_s4(s: f64, i: f64, c: f64) -> (f64, f64) {
    let g = gamma_prime(l(s * s / (1.0 + i)), s, c);
    let v = l(s) - g * l(s / (1.0 + s)) + g * l(c / (1.0 + s)) + (1.0 - g) * l(s + i) - (1.0 - g) * l(s * i / (1.0 + i) + s);
    (v, g)
}

pub fn oracle_s5(s: f64, i: f64, c: f64) -> (f64, f64) {
    let g = gamma_prime(l(s * i / (1.0 + s + i)), s, c);
    let v = g * l(s) - g * l(s / (1.0 + s)) + g * l(c / (1.0 + s)) + (1.0 - g) * l(s / (1.0 + i)) + (1.0 - g) * l(s + i / (1.0 + i))
        - (1.0 - g) * l(i / (1.0 + i));
    (v, g)
}
