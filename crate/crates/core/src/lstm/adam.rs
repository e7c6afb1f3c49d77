use super::Params;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdamConfig {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        AdamConfig {
            lr: 0.001,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

/// Adam with bias-corrected first and second moments.
#[derive(Debug, Clone)]
pub struct Adam {
    config: AdamConfig,
    m: Params,
    v: Params,
    t: i32,
}

impl Adam {
    pub fn new(config: AdamConfig, like: &Params) -> Self {
        Adam {
            config,
            m: like.zeros_like(),
            v: like.zeros_like(),
            t: 0,
        }
    }

    pub fn steps(&self) -> i32 {
        self.t
    }

    pub fn step(&mut self, params: &mut Params, grad: &Params) {
        self.t += 1;
        let AdamConfig {
            lr,
            beta1,
            beta2,
            eps,
        } = self.config;
        let bc1 = 1.0 - beta1.powi(self.t);
        let bc2 = 1.0 - beta2.powi(self.t);
        let tensors = params
            .tensors_mut()
            .into_iter()
            .zip(grad.tensors())
            .zip(self.m.tensors_mut())
            .zip(self.v.tensors_mut());
        for (((p, g), m), v) in tensors {
            let p = p.data_mut();
            let m = m.data_mut();
            let v = v.data_mut();
            for (i, &gi) in g.data().iter().enumerate() {
                m[i] = beta1 * m[i] + (1.0 - beta1) * gi;
                v[i] = beta2 * v[i] + (1.0 - beta2) * gi * gi;
                let m_hat = m[i] / bc1;
                let v_hat = v[i] / bc2;
                p[i] -= lr * m_hat / (v_hat.sqrt() + eps);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{LstmConfig, LstmNetwork};
    use super::*;

    #[test]
    fn first_step_moves_by_lr_times_sign() {
        let net = LstmNetwork::new(
            LstmConfig {
                vocab_size: 2,
                embedding_dim: 2,
                max_length: 2,
                hidden: 1,
                dense: 1,
            },
            0,
        )
        .unwrap();
        let mut params = net.params.clone();
        let mut grad = params.zeros_like();
        grad.dense2_b.data_mut()[0] = 3.0;
        grad.dense1_b.data_mut()[0] = -0.5;
        let mut adam = Adam::new(AdamConfig::default(), &params);
        adam.step(&mut params, &grad);
        // m_hat = g, v_hat = g^2, so the step is lr * g / (|g| + eps).
        let moved = params.dense2_b.data()[0] - net.params.dense2_b.data()[0];
        assert!((moved + 0.001 * 3.0 / (3.0 + 1e-8)).abs() < 1e-15);
        let moved = params.dense1_b.data()[0] - net.params.dense1_b.data()[0];
        assert!((moved - 0.001 * 0.5 / (0.5 + 1e-8)).abs() < 1e-15);
        // Zero gradient leaves parameters untouched.
        assert_eq!(params.embedding, net.params.embedding);
    }
}
