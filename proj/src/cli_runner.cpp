#include "udwq/cli/runner.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "udwq/channel/assemble.hpp"
#include "udwq/channel/measures.hpp"
#include "udwq/fock/fock_oracle.hpp"
#include "udwq/support/rng.hpp"

namespace udwq::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v, int precision = 17) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

field::SpatialProfile make_profile(const ProfileConfig& p,
                                   const Eigen::Vector3d& center_override,
                                   bool use_override) {
  const Eigen::Vector3d c = use_override ? center_override : p.center;
  if (p.type == "gaussian") return field::GaussianProfile{c, p.width};
  return field::CompactBumpProfile{c, p.radius};
}

double profile_length_scale(const ProfileConfig& p) {
  return p.type == "gaussian" ? p.width : p.radius;
}

// CSV with '#'-prefixed metadata, UTF-8, '.' decimal, 17 significant digits.
class CsvFile {
 public:
  CsvFile(const fs::path& path, const std::vector<std::string>& metadata,
          const std::vector<std::string>& columns, int precision)
      : out_(path), precision_(precision) {
    if (!out_) throw ConfigError("cannot open output file " + path.string());
    for (const auto& m : metadata) out_ << "# " << m << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
      out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
  }

  std::string num(double v) const { return fmt(v, precision_); }

 private:
  std::ofstream out_;
  int precision_;
};

struct RunContext {
  ExperimentConfig cfg;
  RunOptions options;
  fs::path out_dir;
  std::string config_hash;

  std::vector<std::string> metadata(const std::string& subcommand) const {
    return {
        std::string(kVersion),
        "subcommand " + subcommand,
        "config-hash " + config_hash,
        "grid cutoff=" + fmt(cfg.cutoff) + " points=" + std::to_string(cfg.points) +
            " dimension=" + std::to_string(cfg.spatial_dimension) +
            " mass=" + fmt(cfg.mass),
        "seed " + std::to_string(cfg.seed),
    };
  }
};

RunContext make_context(const std::string& config_path, const RunOptions& options) {
  RunContext ctx;
  ctx.cfg = load_config(config_path);
  if (options.seed_override) ctx.cfg.seed = *options.seed_override;
  ctx.options = options;
  ctx.out_dir = options.out_dir;
  fs::create_directories(ctx.out_dir);

  const std::string echo = dump_config(ctx.cfg);
  std::ofstream echo_file(ctx.out_dir / "resolved_config.json");
  echo_file << echo;
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(echo)));
  ctx.config_hash = hex;
  return ctx;
}

channel::Matrix4cd random_density4(Rng& rng) {
  Eigen::Matrix4cd g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = rng.complex_gaussian();
  Eigen::Matrix4cd rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

channel::Matrix2cd random_qubit(Rng& rng) {
  Eigen::Matrix2cd g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = rng.complex_gaussian();
  Eigen::Matrix2cd rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

channel::ChannelMap channel_for(const weyl::BilinearTable& table) {
  return [table](const channel::Matrix4cd& rho_EA) {
    channel::ProtocolSpec spec;
    spec.table = table;
    spec.rho_EA = rho_EA;
    return channel::assemble_rho_EB(spec);
  };
}

struct SweepRow {
  double param;
  double e12, margin, ic, neg, signaling;
};

SweepRow evaluate_sweep_point(const ExperimentConfig& cfg) {
  const Scenario sc = resolve_scenario(cfg);
  SweepRow r{};
  channel::ProtocolSpec spec;
  spec.table = sc.table;
  const auto rho = channel::assemble_rho_EB(spec);
  r.e12 = sc.table.E(0, 1);
  r.margin = protocol::strong_coupling_margin(sc.table);
  r.ic = channel::coherent_information(rho);
  r.neg = channel::negativity(rho);
  r.signaling = channel::classical_signaling(
      channel_for(sc.table),
      {channel::bloch_state({0, 0, 1}), channel::bloch_state({0, 0, -1})});
  return r;
}

int run_bilinears(const RunContext& ctx) {
  const Scenario sc = resolve_scenario(ctx.cfg);
  CsvFile csv(ctx.out_dir / "bilinears.csv", ctx.metadata("bilinears"),
              {"i", "j", "E", "H"}, ctx.cfg.precision);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      csv.row({weyl::BilinearTable::kLabels[i], weyl::BilinearTable::kLabels[j],
               csv.num(sc.table.E(i, j)), csv.num(sc.table.H(i, j))});
  CsvFile summary(ctx.out_dir / "bilinears_summary.csv", ctx.metadata("bilinears"),
                  {"key", "value"}, ctx.cfg.precision);
  for (int i = 0; i < 4; ++i)
    summary.row({std::string("W_") + weyl::BilinearTable::kLabels[i],
                 summary.num(sc.table.w_diag(i))});
  summary.row({"E12", summary.num(sc.table.E(0, 1))});
  summary.row({"strong_coupling_margin",
               summary.num(protocol::strong_coupling_margin(sc.table))});
  summary.row({"lambda1", summary.num(sc.lambda1)});
  summary.row({"lambda2", summary.num(sc.lambda2)});
  summary.row({"coupling_ratio", summary.num(sc.coupling_ratio)});
  summary.row({"branch", std::to_string(sc.conditions.branch)});
  return 0;
}

int run_channel(const RunContext& ctx) {
  const Scenario sc = resolve_scenario(ctx.cfg);
  channel::ProtocolSpec spec;
  spec.table = sc.table;
  const auto rho = channel::assemble_rho_EB(spec);

  CsvFile mat(ctx.out_dir / "rho_eb.csv", ctx.metadata("channel"),
              {"i", "j", "re", "im"}, ctx.cfg.precision);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      mat.row({std::to_string(i), std::to_string(j), mat.num(rho(i, j).real()),
               mat.num(rho(i, j).imag())});

  const auto cinfo = channel::channel_coherent_information(channel_for(sc.table));
  CsvFile csv(ctx.out_dir / "channel.csv", ctx.metadata("channel"), {"key", "value"},
              ctx.cfg.precision);
  csv.row({"E12", csv.num(sc.table.E(0, 1))});
  csv.row({"strong_coupling_margin", csv.num(protocol::strong_coupling_margin(sc.table))});
  csv.row({"coherent_information_bell", csv.num(channel::coherent_information(rho))});
  csv.row({"coherent_information_max", csv.num(cinfo.maximum)});
  csv.row({"negativity", csv.num(channel::negativity(rho))});
  csv.row({"branch", std::to_string(sc.conditions.branch)});

  const auto audit = channel::audit_closed_form(sc.table);
  CsvFile acsv(ctx.out_dir / "closed_form_audit.csv", ctx.metadata("channel"),
               {"i", "j", "general_re", "general_im", "printed_re", "printed_im",
                "corrected_re", "corrected_im", "dev_printed", "dev_corrected"},
               ctx.cfg.precision);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      acsv.row({std::to_string(i), std::to_string(j),
                acsv.num(audit.general(i, j).real()), acsv.num(audit.general(i, j).imag()),
                acsv.num(audit.printed(i, j).real()), acsv.num(audit.printed(i, j).imag()),
                acsv.num(audit.corrected(i, j).real()),
                acsv.num(audit.corrected(i, j).imag()),
                acsv.num(std::abs(audit.printed(i, j) - audit.general(i, j))),
                acsv.num(std::abs(audit.corrected(i, j) - audit.general(i, j)))});
  return 0;
}

int run_sweep(const RunContext& ctx) {
  if (!ctx.cfg.sweep) throw ConfigError("sweep subcommand requires a sweep block");
  const auto& sw = *ctx.cfg.sweep;

  std::vector<SweepRow> rows(sw.values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= sw.values.size()) return;
      rows[i] = evaluate_sweep_point(with_sweep_value(ctx.cfg, sw.parameter, sw.values[i]));
      rows[i].param = sw.values[i];
    }
  };
  const unsigned threads =
      std::max(1u, std::min<unsigned>(ctx.options.threads,
                                      static_cast<unsigned>(sw.values.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  CsvFile csv(ctx.out_dir / "sweep.csv", ctx.metadata("sweep"),
              {sw.parameter, "E12", "margin", "I_c", "negativity", "signaling"},
              ctx.cfg.precision);
  for (const auto& r : rows)
    csv.row({csv.num(r.param), csv.num(r.e12), csv.num(r.margin), csv.num(r.ic),
             csv.num(r.neg), csv.num(r.signaling)});
  return 0;
}

int run_spacelike(const RunContext& ctx) {
  if (ctx.cfg.bob.mode != "spacelike" && ctx.cfg.bob.mode != "explicit")
    throw ConfigError("spacelike subcommand requires bob.mode spacelike or explicit");
  const Scenario sc = resolve_scenario(ctx.cfg);

  // The environment marginal rides through the channel untouched, so the
  // meaningful input-independence statements are: Bob's output is identical
  // for every input, and the full output is rho_E (x) sigma_B with one fixed
  // sigma_B.
  channel::ProtocolSpec bell;
  bell.table = sc.table;
  const auto rho = channel::assemble_rho_EB(bell);
  const auto closed = channel::spacelike_rho_EB(bell);
  const channel::Matrix2cd sigma_B = channel::trace_out_second(rho);

  Rng rng(ctx.cfg.seed);
  std::vector<channel::Matrix2cd> bob_outputs;
  double max_factorization_dev = 0.0;
  for (int i = 0; i < 10; ++i) {
    channel::ProtocolSpec spec;
    spec.table = sc.table;
    spec.rho_EA = random_density4(rng);
    const auto out = channel::assemble_rho_EB(spec);
    bob_outputs.push_back(channel::trace_out_second(out));
    const auto expected =
        channel::kron2(sigma_B, channel::trace_out_second(spec.rho_EA));
    max_factorization_dev = std::max(
        max_factorization_dev, (out - expected).cwiseAbs().maxCoeff());
  }

  double max_pairwise = 0.0;
  CsvFile pairs(ctx.out_dir / "spacelike_pairs.csv", ctx.metadata("spacelike"),
                {"i", "j", "bob_output_trace_distance"}, ctx.cfg.precision);
  for (std::size_t i = 0; i < bob_outputs.size(); ++i)
    for (std::size_t j = i + 1; j < bob_outputs.size(); ++j) {
      const double d = channel::trace_distance(bob_outputs[i], bob_outputs[j]);
      max_pairwise = std::max(max_pairwise, d);
      pairs.row({std::to_string(i), std::to_string(j), pairs.num(d)});
    }

  const auto cinfo = channel::channel_coherent_information(channel_for(sc.table));

  std::vector<channel::Matrix2cd> inputs;
  Rng rng2(ctx.cfg.seed + 1);
  for (int i = 0; i < 10; ++i) inputs.push_back(random_qubit(rng2));
  const double signaling = channel::classical_signaling(channel_for(sc.table), inputs);

  CsvFile csv(ctx.out_dir / "spacelike.csv", ctx.metadata("spacelike"), {"key", "value"},
              ctx.cfg.precision);
  csv.row({"max_pairwise_bob_distance", csv.num(max_pairwise)});
  csv.row({"max_factorization_dev", csv.num(max_factorization_dev)});
  csv.row({"negativity", csv.num(channel::negativity(rho))});
  csv.row({"coherent_information_max", csv.num(cinfo.maximum)});
  csv.row({"classical_signaling", csv.num(signaling)});
  csv.row({"closed_vs_general_dev", csv.num((rho - closed).cwiseAbs().maxCoeff())});
  const double cross_e = sc.table.E.block<2, 2>(0, 2).cwiseAbs().maxCoeff();
  csv.row({"cross_E_max", csv.num(cross_e)});

  if (max_pairwise > 1e-12)
    throw ContractViolation("spacelike-input-independence", max_pairwise,
                            "Bob's spacelike output depends on the input state "
                            "(residual cross E = " + fmt(cross_e) +
                            "; slowly decaying profiles need a larger grid.cutoff)");
  if (max_factorization_dev > 1e-12)
    throw ContractViolation("spacelike-factorization", max_factorization_dev,
                            "output is not rho_E (x) sigma_B with a fixed sigma_B "
                            "(residual cross E = " + fmt(cross_e) +
                            "; slowly decaying profiles need a larger grid.cutoff)");
  if (signaling > 1e-10)
    throw ContractViolation("spacelike-no-signaling", signaling,
                            "spacelike channel signals classically");
  return 0;
}

int run_huygens(const RunContext& ctx) {
  if (ctx.cfg.spatial_dimension != 3 || ctx.cfg.mass != 0.0)
    throw ConfigError("huygens subcommand requires the massless 3+1 model");
  const Scenario sc = resolve_scenario(ctx.cfg);

  const double ls = profile_length_scale(ctx.cfg.alice.profile);
  protocol::SupportBall alice{sc.f1.center(), 4.0 * ls, ctx.cfg.alice.time};
  protocol::SupportBall bob{sc.g1.center(), 4.0 * ls, ctx.cfg.bob.time};
  const auto cls = protocol::causal_classify(*sc.model, alice, bob);
  if (cls.cls != protocol::CausalClass::TimelikeInterior)
    throw ConfigError("huygens: Bob's support is not strictly timelike-interior "
                      "to Alice's (margin " + fmt(cls.margin) + ")");

  const double scale = std::abs(sc.table.E(0, 1));
  double cross_max = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j)
      cross_max = std::max(cross_max, std::abs(sc.table.E(i, j)));

  channel::ProtocolSpec bell;
  bell.table = sc.table;
  const auto rho_bell = channel::assemble_rho_EB(bell);
  const auto closed_dev =
      (rho_bell - channel::spacelike_rho_EB(bell)).cwiseAbs().maxCoeff();
  const channel::Matrix2cd sigma_B = channel::trace_out_second(rho_bell);

  Rng rng(ctx.cfg.seed);
  double max_pairwise = 0.0, max_factorization_dev = 0.0;
  std::vector<channel::Matrix2cd> bob_outputs;
  for (int i = 0; i < 10; ++i) {
    channel::ProtocolSpec spec;
    spec.table = sc.table;
    spec.rho_EA = random_density4(rng);
    const auto out = channel::assemble_rho_EB(spec);
    bob_outputs.push_back(channel::trace_out_second(out));
    const auto expected =
        channel::kron2(sigma_B, channel::trace_out_second(spec.rho_EA));
    max_factorization_dev =
        std::max(max_factorization_dev, (out - expected).cwiseAbs().maxCoeff());
  }
  for (std::size_t i = 0; i < bob_outputs.size(); ++i)
    for (std::size_t j = i + 1; j < bob_outputs.size(); ++j)
      max_pairwise =
          std::max(max_pairwise, channel::trace_distance(bob_outputs[i], bob_outputs[j]));

  CsvFile csv(ctx.out_dir / "huygens.csv", ctx.metadata("huygens"), {"key", "value"},
              ctx.cfg.precision);
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j)
      csv.row({std::string("E_") + weyl::BilinearTable::kLabels[i] + "_" +
                   weyl::BilinearTable::kLabels[j],
               csv.num(sc.table.E(i, j))});
  csv.row({"E12_scale", csv.num(scale)});
  csv.row({"cross_over_scale", csv.num(cross_max / scale)});
  csv.row({"lightcone_margin", csv.num(cls.margin)});
  csv.row({"input_independence_max", csv.num(max_pairwise)});
  csv.row({"max_factorization_dev", csv.num(max_factorization_dev)});
  csv.row({"closed_vs_general_dev", csv.num(closed_dev)});

  if (cross_max > 1e-8 * scale)
    throw ContractViolation("strong-huygens", cross_max / scale,
                            "interior causal propagator exceeds 1e-8 of scale");
  if (max_pairwise > 1e-10 || max_factorization_dev > 1e-10)
    throw ContractViolation("huygens-input-independence",
                            std::max(max_pairwise, max_factorization_dev),
                            "timelike-interior outputs depend on the input state");
  return 0;
}

int run_oracle_check(const RunContext& ctx) {
  Rng rng(ctx.cfg.seed);
  CsvFile csv(ctx.out_dir / "oracle_check.csv", ctx.metadata("oracle-check"),
              {"model", "modes", "n_max", "trace_distance", "pass"}, ctx.cfg.precision);
  double worst = 0.0;
  for (int m = 0; m < ctx.cfg.oracle.models; ++m) {
    fock::DiscreteModeModel model;
    const int modes = 1 + (m % ctx.cfg.oracle.modes);
    model.alpha.resize(4, modes);
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < modes; ++k)
        model.alpha(b, k) = ctx.cfg.oracle.amplitude * rng.complex_gaussian();
    if (!fock::truncation_adequate(model, fock::TruncatedFock{ctx.cfg.oracle.n_max}))
      std::cerr << "warning: model " << m << " is below the soft truncation rule "
                << "n_max >= 4 A^2 + 20\n";

    channel::ProtocolSpec spec;
    spec.table = fock::oracle_bilinears(model);
    const auto via_weyl = channel::assemble_rho_EB(spec);
    const auto via_fock =
        fock::simulate_protocol(model, spec.rho_EA, spec.bob_initial,
                                fock::TruncatedFock{ctx.cfg.oracle.n_max});
    const double d = channel::trace_distance(via_weyl, via_fock);
    worst = std::max(worst, d);
    csv.row({std::to_string(m), std::to_string(modes),
             std::to_string(ctx.cfg.oracle.n_max), csv.num(d),
             d <= 1e-6 ? "1" : "0"});
  }
  if (worst > 1e-6)
    throw ContractViolation("fock-weyl-equivalence", worst,
                            "pipelines disagree beyond 1e-6");
  return 0;
}

int run_bob_solve(const RunContext& ctx) {
  ExperimentConfig cfg = ctx.cfg;
  if (cfg.bob.mode != "solve")
    throw ConfigError("bob-solve subcommand requires bob.mode = solve");
  const Scenario solved = resolve_scenario(cfg);

  cfg.bob.mode = "ideal";
  const Scenario ideal = resolve_scenario(cfg);

  // solved decoding profiles, four spatial profiles over the grid
  CsvFile prof(ctx.out_dir / "bob_profiles.csv", ctx.metadata("bob-solve"),
               {"k", "G1_delta", "G1_prime", "G2_delta", "G2_prime"},
               ctx.cfg.precision);
  const auto& g1d = std::get<field::TabulatedFourierProfile>(solved.g1.components[0].profile);
  const auto& g1p = std::get<field::TabulatedFourierProfile>(solved.g1.components[1].profile);
  const auto& g2d = std::get<field::TabulatedFourierProfile>(solved.g2.components[0].profile);
  const auto& g2p = std::get<field::TabulatedFourierProfile>(solved.g2.components[1].profile);
  for (std::size_t i = 0; i < g1d.k_nodes.size(); ++i)
    prof.row({prof.num(g1d.k_nodes[i]), prof.num(g1d.values[i].real()),
              prof.num(g1p.values[i].real()), prof.num(g2d.values[i].real()),
              prof.num(g2p.values[i].real())});

  const double table_dev = std::max(
      (solved.table.E - ideal.table.E).cwiseAbs().maxCoeff(),
      (solved.table.H - ideal.table.H).cwiseAbs().maxCoeff());
  channel::ProtocolSpec ss, si;
  ss.table = solved.table;
  si.table = ideal.table;
  const double ic_solved = channel::coherent_information(channel::assemble_rho_EB(ss));
  const double ic_ideal = channel::coherent_information(channel::assemble_rho_EB(si));

  CsvFile csv(ctx.out_dir / "bob_solve.csv", ctx.metadata("bob-solve"), {"key", "value"},
              ctx.cfg.precision);
  csv.row({"bilinear_max_dev_vs_ideal", csv.num(table_dev)});
  csv.row({"I_c_solved", csv.num(ic_solved)});
  csv.row({"I_c_ideal", csv.num(ic_ideal)});
  csv.row({"coverage", csv.num(ctx.cfg.bob.coverage)});
  if (ctx.cfg.bob.coverage >= 1.0 && table_dev > 1e-10)
    throw ContractViolation("bob-solve-bilinears", table_dev,
                            "solved decoding smearings do not reproduce the "
                            "ideal bilinears");
  return 0;
}

}  // namespace

ExperimentConfig with_sweep_value(const ExperimentConfig& cfg, const std::string& parameter,
                                  double value) {
  ExperimentConfig out = cfg;
  if (parameter == "lambda2_sq_w2")
    out.alice.lambda2_sq_w2 = value;
  else if (parameter == "lambda2") {
    out.alice.lambda2 = value;
    out.alice.lambda2_sq_w2.reset();
  } else if (parameter == "branch")
    out.alice.branch = static_cast<int>(value);
  else if (parameter == "coverage")
    out.bob.coverage = value;
  else if (parameter == "bob_distance") {
    Eigen::Vector3d dir = cfg.bob.offset;
    if (dir.norm() == 0.0) dir = Eigen::Vector3d::UnitX();
    out.bob.offset = value * dir.normalized();
  } else if (parameter == "bob_time")
    out.bob.time = value;
  else
    throw ConfigError("unknown sweep parameter " + parameter);
  return out;
}

Scenario resolve_scenario(const ExperimentConfig& cfg) {
  Scenario sc;
  if (cfg.spatial_dimension == 3)
    sc.model = std::make_shared<field::Minkowski3p1>(cfg.mass);
  else
    sc.model = std::make_shared<field::Minkowski1p1>(cfg.mass);
  sc.grid = std::make_shared<const field::KGrid>(
      cfg.spatial_dimension == 3 ? field::KGrid::radial_3d(cfg.cutoff, cfg.points)
                                 : field::KGrid::cartesian_1d(cfg.cutoff, cfg.points));

  const auto alice_profile = make_profile(cfg.alice.profile, {}, false);
  const field::SmearingSpec f1_unit(1.0, field::TemporalKind::Delta, cfg.alice.time,
                                    alice_profile);
  const field::SmearingSpec f2_unit(1.0, field::TemporalKind::DeltaPrime, cfg.alice.time,
                                    alice_profile);
  const auto a1u = field::mode_amplitude(*sc.model, f1_unit, sc.grid);
  const auto a2u = field::mode_amplitude(*sc.model, f2_unit, sc.grid);
  sc.conditions = protocol::conditions_from_amplitudes(a1u, a2u, cfg.alice.branch);

  sc.lambda2 = cfg.alice.lambda2_sq_w2
                   ? std::sqrt(*cfg.alice.lambda2_sq_w2 / sc.conditions.w2)
                   : cfg.alice.lambda2;
  if (cfg.alice.coupling_mode == "fine_tuned") {
    // smallest branch n >= the configured one whose strong-coupling margin
    // E12^2/W22 clears the threshold; larger n only rescales lambda1
    const double w22 = sc.lambda2 * sc.lambda2 * sc.conditions.w2;
    for (int n = cfg.alice.branch;; ++n) {
      sc.conditions.branch = n;
      sc.coupling_ratio = protocol::solve_fine_tuning(sc.conditions, sc.lambda2);
      const double e12 =
          sc.coupling_ratio * sc.lambda2 * sc.lambda2 * sc.conditions.e;
      if (e12 * e12 / w22 >= cfg.alice.margin_threshold ||
          n >= cfg.alice.branch + 200)
        break;
    }
    sc.lambda1 = sc.coupling_ratio * sc.lambda2;
  } else {
    sc.lambda1 = cfg.alice.lambda1;
    sc.coupling_ratio = sc.lambda1 / sc.lambda2;
  }

  sc.f1 = field::SmearingSpec(sc.lambda1, field::TemporalKind::Delta, cfg.alice.time,
                              alice_profile);
  sc.f2 = field::SmearingSpec(sc.lambda2, field::TemporalKind::DeltaPrime, cfg.alice.time,
                              alice_profile);

  if (cfg.bob.mode == "ideal") {
    sc.g1 = sc.f1;
    sc.g2 = sc.f2;
  } else if (cfg.bob.mode == "solve") {
    const auto a1 = field::mode_amplitude(*sc.model, sc.f1, sc.grid);
    const auto a2 = field::mode_amplitude(*sc.model, sc.f2, sc.grid);
    auto solved = protocol::bob_smearing_solve(*sc.model, a1, a2, cfg.bob.time);
    if (cfg.bob.coverage < 1.0) {
      const double r_full = std::abs(cfg.bob.time - cfg.alice.time) +
                            4.0 * profile_length_scale(cfg.alice.profile);
      solved.g1 = protocol::truncate_coverage(solved.g1, cfg.bob.coverage, r_full, *sc.grid);
      solved.g2 = protocol::truncate_coverage(solved.g2, cfg.bob.coverage, r_full, *sc.grid);
    }
    sc.g1 = solved.g1;
    sc.g2 = solved.g2;
  } else if (cfg.bob.mode == "spacelike") {
    const auto bob_profile = make_profile(cfg.alice.profile, cfg.bob.offset, true);
    sc.g1 = field::SmearingSpec(sc.lambda1, field::TemporalKind::Delta, cfg.bob.time,
                                bob_profile);
    sc.g2 = field::SmearingSpec(sc.lambda2, field::TemporalKind::DeltaPrime, cfg.bob.time,
                                bob_profile);
  } else {  // explicit
    const auto bob_profile = make_profile(cfg.bob.profile, cfg.bob.offset, true);
    sc.g1 = field::SmearingSpec(cfg.bob.lambda1, field::TemporalKind::Delta, cfg.bob.time,
                                bob_profile);
    sc.g2 = field::SmearingSpec(cfg.bob.lambda2, field::TemporalKind::DeltaPrime,
                                cfg.bob.time, bob_profile);
  }

  sc.table = field::build_bilinear_table(*sc.model, {sc.f1, sc.f2, sc.g1, sc.g2}, sc.grid);
  return sc;
}

int run_subcommand(const std::string& name, const std::string& config_path,
                   const RunOptions& options) {
  const RunContext ctx = make_context(config_path, options);
  if (name == "bilinears") return run_bilinears(ctx);
  if (name == "channel") return run_channel(ctx);
  if (name == "sweep") return run_sweep(ctx);
  if (name == "spacelike") return run_spacelike(ctx);
  if (name == "huygens") return run_huygens(ctx);
  if (name == "oracle-check") return run_oracle_check(ctx);
  if (name == "bob-solve") return run_bob_solve(ctx);
  throw ConfigError("unknown subcommand " + name);
}

int exit_code_for_current_exception() {
  try {
    throw;
  } catch (const ContractViolation& e) {
    std::cerr << "numerical contract violation [" << e.invariant() << "]: " << e.what()
              << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "config error (precondition): " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "numerical contract violation [tabulated-range]: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace udwq::cli
