//! Name → generator registry.

use crate::config::{ConfigError, DataSection, GeneratorSpec};
use timoshenko_core::data::{Generator, InitialData};

/// Registered generator names.
pub const REGISTRY: [&str; 5] = ["zero", "gaussian", "dgaussian", "ricker", "box-mollified"];

/// `gaussian` with `derivative = 1` or `2` is `dgaussian` or `ricker`.
pub fn generator(spec: &GeneratorSpec) -> Result<Generator, ConfigError> {
    let (sigma, amp) = (spec.width, spec.amp);
    let order = |base: u32| match base + spec.derivative {
        0 => Ok(Generator::Gaussian { sigma, amp }),
        1 => Ok(Generator::DGaussian { sigma, amp }),
        2 => Ok(Generator::Ricker { sigma, amp }),
        n => Err(ConfigError::Validation(vec![format!(
            "generator `{}`: derivative order {n} is not available (at most 2)",
            spec.name
        )])),
    };
    match spec.name.as_str() {
        "zero" => Ok(Generator::Zero),
        "gaussian" => order(0),
        "dgaussian" => order(1),
        "ricker" => order(2),
        "box-mollified" if spec.derivative == 0 => Ok(Generator::BoxMollified { half_width: spec.width, amp }),
        "box-mollified" => Err(ConfigError::Validation(vec![
            "generator `box-mollified` takes no derivative order".into(),
        ])),
        other => Err(ConfigError::UnknownGenerator(other.to_string())),
    }
}

pub fn generate_data(data: &DataSection) -> Result<InitialData, ConfigError> {
    Ok(InitialData {
        w0: generator(&data.w0)?,
        w1: generator(&data.w1)?,
        psi0: generator(&data.psi0)?,
        psi1: generator(&data.psi1)?,
    })
}
