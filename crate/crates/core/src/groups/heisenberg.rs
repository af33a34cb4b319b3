//! Integer Heisenberg group arithmetic.
//!
//! Elements are triples `(a, b, c)` standing for the upper unitriangular
//! matrix with `a` at (1,2), `b` at (2,3) and `c` at (1,3). Matrix
//! multiplication gives the composition law below, all in exact integer
//! arithmetic.

/// `(a₁,b₁,c₁)·(a₂,b₂,c₂) = (a₁+a₂, b₁+b₂, c₁+c₂+a₁b₂)`
pub fn mul(g: [i64; 3], h: [i64; 3]) -> [i64; 3] {
    [g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1]]
}

/// `(a,b,c)⁻¹ = (−a, −b, ab−c)`
pub fn inv(g: [i64; 3]) -> [i64; 3] {
    [-g[0], -g[1], g[0] * g[1] - g[2]]
}

pub const IDENTITY: [i64; 3] = [0, 0, 0];
pub const GEN_X: [i64; 3] = [1, 0, 0];
pub const GEN_Y: [i64; 3] = [0, 1, 0];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_cancels() {
        let g = [3, -2, 7];
        assert_eq!(mul(g, inv(g)), IDENTITY);
        assert_eq!(mul(inv(g), g), IDENTITY);
    }

    #[test]
    fn generators_do_not_commute() {
        let xy = mul(GEN_X, GEN_Y);
        let yx = mul(GEN_Y, GEN_X);
        assert_ne!(xy, yx);
        // the commutator [x,y] is the central element (0,0,1)
        let comm = mul(mul(xy, inv(GEN_X)), inv(GEN_Y));
        assert_eq!(comm, [0, 0, 1]);
    }

    #[test]
    fn associative_on_samples() {
        let es = [[1, 0, 0], [0, 1, 0], [2, -1, 3], [-4, 5, -6]];
        for g in es {
            for h in es {
                for k in es {
                    assert_eq!(mul(mul(g, h), k), mul(g, mul(h, k)));
                }
            }
        }
    }
}
