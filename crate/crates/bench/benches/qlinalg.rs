use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spinbath_core::entanglement::tangle_mixed_pair;
use spinbath_core::qlinalg::{
    partial_trace, pauli_embed, reduced_from_pure, thermal_state, PauliAxis, Propagator,
    Temperature,
};
use spinbath_core::sampler::SymmetricBasis;
use spinbath_core::{DensityOperator, HermitianOperator, QubitRegister, StateVector};

fn random_hermitian(n_qubits: usize, rng: &mut ChaCha8Rng) -> HermitianOperator {
    let register = QubitRegister::new(n_qubits).unwrap();
    let dim = register.dimension();
    let raw = nalgebra_matrix(dim, rng);
    let herm = (&raw + raw.adjoint()).map(|x| x * C64::new(0.5, 0.0));
    HermitianOperator::new(register, herm).unwrap()
}

fn nalgebra_matrix(dim: usize, rng: &mut ChaCha8Rng) -> nalgebra::DMatrix<C64> {
    nalgebra::DMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn bench_eigendecomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("propagator_setup");
    group.sample_size(10);
    for n_qubits in [5usize, 7, 8] {
        let mut rng = ChaCha8Rng::seed_from_u64(n_qubits as u64);
        let op = random_hermitian(n_qubits, &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(1 << n_qubits), &op, |b, op| {
            b.iter(|| Propagator::new(op));
        });
    }
    group.finish();
}

fn bench_evolution_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("density_evolution_step");
    group.sample_size(10);
    for n_qubits in [5usize, 7] {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let op = random_hermitian(n_qubits, &mut rng);
        let propagator = Propagator::new(&op);
        let register = op.register();
        let rho = DensityOperator::new(
            register,
            nalgebra::DMatrix::from_diagonal_element(
                register.dimension(),
                register.dimension(),
                C64::new(1.0 / register.dimension() as f64, 0.0),
            ),
        )
        .unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(1 << n_qubits),
            &(propagator, rho),
            |b, (propagator, rho)| {
                b.iter(|| propagator.evolve_density(rho, 0.37).unwrap());
            },
        );
    }
    group.finish();
}

fn bench_partial_trace_and_tangle(c: &mut Criterion) {
    let register = QubitRegister::new(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let amps = nalgebra::DVector::from_fn(register.dimension(), |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let psi = StateVector::normalized(register, amps).unwrap();
    c.bench_function("reduced_pair_from_pure_128", |b| {
        b.iter(|| reduced_from_pure(&psi, &[1, 2]).unwrap());
    });
    let pair = reduced_from_pure(&psi, &[1, 2]).unwrap();
    c.bench_function("tangle_mixed_pair", |b| {
        b.iter(|| tangle_mixed_pair(&pair).unwrap());
    });
    let rho = DensityOperator::from_pure(&psi);
    c.bench_function("partial_trace_128_to_pair", |b| {
        b.iter(|| partial_trace(&rho, &[1, 2]).unwrap());
    });
}

fn bench_thermal_state(c: &mut Criterion) {
    let mut group = c.benchmark_group("thermal_state");
    group.sample_size(10);
    for n_qubits in [5usize, 7] {
        let register = QubitRegister::new(n_qubits).unwrap();
        let mut op = HermitianOperator::zero(register);
        for q in 0..n_qubits {
            op = op
                .add(&pauli_embed(PauliAxis::Z, q, register).unwrap().scale(0.5))
                .unwrap();
            op = op
                .add(&pauli_embed(PauliAxis::X, q, register).unwrap().scale(0.01))
                .unwrap();
        }
        group.bench_with_input(BenchmarkId::from_parameter(1 << n_qubits), &op, |b, op| {
            b.iter(|| thermal_state(op, Temperature::Finite(0.1)).unwrap());
        });
    }
    group.finish();
}

fn bench_sampler(c: &mut Criterion) {
    let mut group = c.benchmark_group("symmetric_sample_and_margin");
    for n_bath in [3usize, 5, 8] {
        let basis = SymmetricBasis::new(n_bath).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n_bath), &basis, |b, basis| {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            b.iter(|| {
                let psi = basis.sample(&mut rng).unwrap();
                spinbath_core::sampler::sharing_margin(&psi).unwrap()
            });
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_eigendecomposition,
    bench_evolution_step,
    bench_partial_trace_and_tangle,
    bench_thermal_state,
    bench_sampler
);
criterion_main!(benches);
