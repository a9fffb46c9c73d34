#include "reid/synthgen.hpp"

#include <cmath>
#include <random>

#include "reid/errors.hpp"

namespace reid {

namespace {

constexpr double kTau = 6.283185307179586;

// Frequencies live on a 0.25 Hz grid so that every oscillator shares the 4 s
// period (exact periodicity when drift and jitter are zero).
double grid_freq(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> steps(2, 16);  // 0.5 .. 4.0 Hz
  return 0.25 * steps(rng);
}

Oscillator draw_oscillator(std::mt19937_64& rng, double amp_lo, double amp_hi) {
  std::uniform_int_distribution<int> n_comp(2, 4);
  std::uniform_real_distribution<double> amp(amp_lo, amp_hi);
  std::uniform_real_distribution<double> phase(0.0, kTau);
  Oscillator osc(n_comp(rng));
  for (SinComponent& c : osc) {
    c.freq = grid_freq(rng);
    c.amp = amp(rng);
    c.phase = phase(rng);
  }
  return osc;
}

double eval_osc(const Oscillator& osc, double t, double extra_phase) {
  double v = 0.0;
  for (const SinComponent& c : osc)
    v += c.amp * std::sin(kTau * c.freq * t + c.phase + extra_phase);
  return v;
}

UnitQuat axis_rot(int axis, double angle) {
  const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  switch (axis) {
    case 0: return {c, s, 0.0, 0.0};
    case 1: return {c, 0.0, s, 0.0};
    default: return {c, 0.0, 0.0, s};
  }
}

}  // namespace

UserProfile generate_profile(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  UserProfile p;
  p.seed = seed;

  for (Oscillator& o : p.hand_osc) o = draw_oscillator(rng, 0.05, 0.4);
  for (Oscillator& o : p.rot_osc) o = draw_oscillator(rng, 0.1, 0.5);

  std::uniform_real_distribution<double> lx(-0.45, -0.15), rx(0.15, 0.45);
  std::uniform_real_distribution<double> hy(-0.55, -0.20), hz(-0.50, -0.20);
  p.left_rest = Vec3(lx(rng), hy(rng), hz(rng));
  p.right_rest = Vec3(rx(rng), hy(rng), hz(rng));

  std::uniform_real_distribution<double> height(1.5, 1.9);
  p.head_height = height(rng);
  std::uniform_real_distribution<double> bob(0.01, 0.05);
  p.bob_amp = bob(rng);
  p.bob_freq = grid_freq(rng);
  std::uniform_real_distribution<double> drift(-0.08, 0.08);
  p.yaw_drift_rate = drift(rng);
  std::uniform_real_distribution<double> jitter_scale(0.001, 0.004);
  p.jitter_scale = jitter_scale(rng);
  p.head_pitch_osc = draw_oscillator(rng, 0.1, 0.5);
  return p;
}

Recording generate_recording(const UserProfile& profile, double duration_s, double fps,
                             std::uint64_t session_seed) {
  if (duration_s < 1.0) throw UsageError("generate_recording: duration must be >= 1 s");
  if (fps <= 0.0) throw UsageError("generate_recording: fps must be positive");

  std::mt19937_64 rng(session_seed);
  std::uniform_real_distribution<double> phase(0.0, kTau);
  std::uniform_real_distribution<double> yaw0_dist(0.0, kTau);

  // Session-level variation: a global phase offset per oscillator group and a
  // starting yaw. Drawn before the jitter stream so the draw order is fixed.
  const double yaw0 = yaw0_dist(rng);
  std::array<double, 6> hand_phase, rot_phase;
  for (double& v : hand_phase) v = phase(rng);
  for (double& v : rot_phase) v = phase(rng);
  const double bob_phase = phase(rng);
  const double pitch_phase = phase(rng);

  std::normal_distribution<double> jitter_dist(0.0,
                                               std::max(profile.jitter_scale, 1e-12));
  auto jitter = [&]() { return profile.jitter_scale > 0.0 ? jitter_dist(rng) : 0.0; };

  Recording rec;
  rec.user_id = "u";
  rec.session_id = "s";
  rec.nominal_fps = fps;

  const long n = std::lround(duration_s * fps);
  rec.frames.reserve(n);
  for (long k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / fps;
    const double yaw = yaw0 + profile.yaw_drift_rate * t;
    const UnitQuat yaw_q = yaw_quat(yaw);

    PoseFrame f;
    f.t = t;

    const Vec3 head_pos(0.05 * std::sin(kTau * 0.25 * t + bob_phase),
                        profile.head_height +
                            profile.bob_amp * std::sin(kTau * profile.bob_freq * t + bob_phase),
                        0.05 * std::cos(kTau * 0.25 * t + bob_phase));
    f.head.p = head_pos + Vec3(jitter(), jitter(), jitter());
    // User-specific periodic pitch on top of the yaw.
    f.head.q = quat_mul(
        yaw_q, axis_rot(0, eval_osc(profile.head_pitch_osc, t, pitch_phase)));

    auto hand = [&](const Vec3& rest, int osc_base) {
      Pose pose;
      const Vec3 local(rest.x() + eval_osc(profile.hand_osc[osc_base], t, hand_phase[osc_base]),
                       rest.y() + eval_osc(profile.hand_osc[osc_base + 1], t, hand_phase[osc_base + 1]),
                       rest.z() + eval_osc(profile.hand_osc[osc_base + 2], t, hand_phase[osc_base + 2]));
      pose.p = head_pos + rotate_vec(yaw_q, local) + Vec3(jitter(), jitter(), jitter());
      UnitQuat q = yaw_q;
      for (int a = 0; a < 3; ++a)
        q = quat_mul(q, axis_rot(a, eval_osc(profile.rot_osc[osc_base + a], t,
                                             rot_phase[osc_base + a])));
      pose.q = q;
      return pose;
    };
    f.left = hand(profile.left_rest, 0);
    f.right = hand(profile.right_rest, 3);
    rec.frames.push_back(f);
  }
  return rec;
}

}  // namespace reid
