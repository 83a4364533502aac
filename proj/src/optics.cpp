#include "ringmem/optics.hpp"

#include <algorithm>
#include <cmath>

#include "ringmem/dynamics.hpp"

namespace ringmem {

namespace {

constexpr double kPi = 3.14159265358979323846;

StateMatrix conjugate(const StateMatrix& state, const Matrix& u) {
  Matrix out = u * state.data() * u.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return StateMatrix(state.space(), std::move(out));
}

// exp(i * generator) for Hermitian generator.
Matrix unitary_from(const Matrix& generator) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(generator);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  Eigen::VectorXcd phases(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) phases(i) = std::polar(1.0, ev(i));
  const Matrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

StateMatrix relabel(const StateMatrix& state, const std::string& from, const std::string& to) {
  if (from == to) return state;
  return StateMatrix(state.space().relabeled(from, to), state.data());
}

}  // namespace

StateMatrix beamsplitter_transform(const StateMatrix& state, const std::string& mode_i,
                                   const std::string& mode_j) {
  const CompositeSpace& s = state.space();
  if (mode_i == mode_j)
    throw Error(ErrorKind::InvalidArgument, "beam splitter needs two distinct modes");
  if (s.mode(s.index_of(mode_i)).cutoff != s.mode(s.index_of(mode_j)).cutoff)
    throw Error(ErrorKind::InvalidArgument,
                "beam splitter modes " + mode_i + " and " + mode_j + " have different cutoffs");
  const OperatorMatrix hop = creation(s, mode_i) * annihilation(s, mode_j);
  const Matrix generator = (kPi / 4.0) * (hop.data + hop.data.adjoint());
  return conjugate(state, unitary_from(generator));
}

StateMatrix phase_shift(const StateMatrix& state, const std::string& mode, double theta) {
  const CompositeSpace& s = state.space();
  const std::size_t k = s.index_of(mode);
  Eigen::VectorXcd diag(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t idx = 0; idx < s.dim(); ++idx)
    diag(static_cast<Eigen::Index>(idx)) = std::polar(1.0, theta * s.occupations(idx)[k]);
  return conjugate(state, Matrix(diag.asDiagonal()));
}

void LinearOpticsNetwork::validate() const {
  if (modes.empty()) throw Error(ErrorKind::InvalidArgument, "optics network has no modes");
  std::vector<ModeSpace> live = modes;
  auto find = [&](const std::string& label) -> ModeSpace& {
    auto it = std::find_if(live.begin(), live.end(),
                           [&](const ModeSpace& m) { return m.label == label; });
    if (it == live.end())
      throw Error(ErrorKind::InvalidArgument, "optics network: no mode '" + label + "' here");
    return *it;
  };
  auto rename = [&](const std::string& from, const std::string& to) {
    if (to.empty() || to == from) return;
    if (std::any_of(live.begin(), live.end(), [&](const ModeSpace& m) { return m.label == to; }))
      throw Error(ErrorKind::InvalidArgument, "optics network: label '" + to + "' already in use");
    find(from).label = to;
  };
  for (const auto& element : elements) {
    if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
      if (bs->first == bs->second)
        throw Error(ErrorKind::InvalidArgument, "optics network: beam splitter on one mode");
      if (find(bs->first).cutoff != find(bs->second).cutoff)
        throw Error(ErrorKind::InvalidArgument, "optics network: beam splitter cutoff mismatch");
      rename(bs->first, bs->first_out);
      rename(bs->second, bs->second_out);
    } else if (const auto* ph = std::get_if<PhaseShift>(&element)) {
      find(ph->mode);
    } else if (const auto* vr = std::get_if<VortexRelabel>(&element)) {
      if (vr->oam_sign != 1 && vr->oam_sign != -1)
        throw Error(ErrorKind::InvalidArgument, "optics network: vortex sign must be +1 or -1");
      find(vr->mode);
      rename(vr->mode, vr->new_label);
    }
  }
}

StateMatrix run_mach_zehnder(const LinearOpticsNetwork& network,
                             const std::vector<int>& input_occupations) {
  network.validate();
  StateMatrix state = fock_ket(CompositeSpace(network.modes), input_occupations);
  for (const auto& element : network.elements) {
    if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
      state = beamsplitter_transform(state, bs->first, bs->second);
      if (!bs->first_out.empty()) state = relabel(state, bs->first, bs->first_out);
      if (!bs->second_out.empty()) state = relabel(state, bs->second, bs->second_out);
    } else if (const auto* ph = std::get_if<PhaseShift>(&element)) {
      state = phase_shift(state, ph->mode, ph->theta);
    } else if (const auto* vr = std::get_if<VortexRelabel>(&element)) {
      state = relabel(state, vr->mode, vr->new_label);
    }
  }
  return state;
}

LinearOpticsNetwork mach_zehnder(std::optional<double> phase, int cutoff) {
  LinearOpticsNetwork net;
  net.modes = {{"a0", cutoff}, {"a1", cutoff}};
  net.elements.emplace_back(BeamSplitter{"a0", "a1", "a2", "a3"});
  if (phase) net.elements.emplace_back(PhaseShift{"a3", *phase});
  net.elements.emplace_back(BeamSplitter{"a2", "a3", "a4", "a5"});
  return net;
}

StateMatrix make_superposition_input(int cutoff) {
  LinearOpticsNetwork net;
  net.modes = {{"a0", cutoff}, {"a1", cutoff}};
  net.elements.emplace_back(BeamSplitter{"a0", "a1", "a2", "a3"});
  // The reflected arm carries an extra i; undo it so both branches enter
  // the cavity in phase.
  net.elements.emplace_back(PhaseShift{"a2", -kPi / 2.0});
  net.elements.emplace_back(VortexRelabel{"a2", +1, modes::a_ell});
  net.elements.emplace_back(VortexRelabel{"a3", -1, modes::a_mell});
  StateMatrix state = run_mach_zehnder(net, {0, 1});

  const double amp = 1.0 / std::sqrt(2.0);
  const StateMatrix direct = superpose(state.space(), {{amp, {1, 0}}, {amp, {0, 1}}});
  const double dev = (state.data() - direct.data()).cwiseAbs().maxCoeff();
  if (dev > 1e-12)
    throw Error(ErrorKind::InvalidArgument,
                "superposition input disagrees with the direct construction");
  return state;
}

StateMatrix make_entangled_input(int cutoff) {
  const CompositeSpace space({{modes::labeled(modes::a_ell, 1), cutoff},
                              {modes::labeled(modes::a_mell, 1), cutoff},
                              {modes::labeled(modes::a_ell, 2), cutoff},
                              {modes::labeled(modes::a_mell, 2), cutoff}});
  const double amp = 1.0 / std::sqrt(2.0);
  return superpose(space, {{amp, {1, 0, 0, 1}}, {amp, {0, 1, 1, 0}}});
}

}  // namespace ringmem
