// Command-line frontend: construction, invariants and numerical verification
// of lemniscate-knot fields, with JSON/CSV output.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "lemknot/json_io.hpp"
#include "lemknot/knot_tables.hpp"
#include "lemknot/verify.hpp"

using namespace lemknot;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInternal = 3;

struct SpecFlags {
  int s = 0, r = 0, lobes = 0;
  std::string a = "1", b = "1", lambda, preset;
  int n_rot = 0;
};

void add_spec_flags(CLI::App* cmd, SpecFlags& flags, bool with_preset = true) {
  cmd->add_option("--s", flags.s, "strand count");
  cmd->add_option("--r", flags.r, "repeats of the basic pattern");
  cmd->add_option("--l", flags.lobes, "lobes of the transverse Lissajous figure");
  cmd->add_option("--a", flags.a, "x stretching factor (rational, p/q)")->capture_default_str();
  cmd->add_option("--b", flags.b, "y stretching factor; negative mirrors")->capture_default_str();
  cmd->add_option("--lambda", flags.lambda,
                  "overall scale (rational); default 1 for l<=2, 1/2 for l=3, searched for l>=4");
  cmd->add_option("--n-rot", flags.n_rot, "full rotations of the transverse figure per period");
  if (with_preset)
    cmd->add_option("--preset", flags.preset,
                    "one of fig8, f5r2, f4r3, borromean, cable-13n4587");
}

LemniscateSpec spec_from_flags(const SpecFlags& flags, bool* searched_lambda = nullptr) {
  SpecFlags f = flags;
  if (f.preset == "fig8") {
    f.s = 3; f.r = 2; f.lobes = 2;
  } else if (f.preset == "f5r2") {
    f.s = 5; f.r = 2; f.lobes = 2;
  } else if (f.preset == "f4r3") {
    f.s = 4; f.r = 2; f.lobes = 3;
    if (f.lambda.empty()) f.lambda = "1/2";
  } else if (f.preset == "borromean") {
    f.s = 3; f.r = 3; f.lobes = 2;
  } else if (!f.preset.empty() && f.preset != "cable-13n4587") {
    throw ValidationError("unknown preset '" + f.preset + "'");
  }
  if (f.s == 0 || f.r == 0 || f.lobes == 0)
    throw ValidationError("--s, --r and --l are required (or use --preset)");

  LemniscateSpec spec;
  spec.s = f.s;
  spec.r = f.r;
  spec.lobes = f.lobes;
  spec.a = parse_rational(f.a);
  spec.b = parse_rational(f.b);
  if (!f.lambda.empty()) {
    spec.lambda = parse_rational(f.lambda);
  } else {
    auto def = default_lambda(f.lobes);
    if (def) {
      spec.lambda = *def;
    } else {
      spec.validate();
      LambdaSearchOptions search;
      search.nodal.h_steps = 192;
      search.resolution = make_rational(1, 100);
      auto res = lambda_threshold_search(spec, search);
      spec.lambda = res.best_lambda;
      if (searched_lambda) *searched_lambda = true;
    }
  }
  spec.validate();
  return spec;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file '" + path + "'");
  out << content;
}

std::vector<TrigStrand> strands_for(const SpecFlags& flags, const LemniscateSpec& spec) {
  if (flags.preset == "cable-13n4587") return cable_13n4587_strands();
  if (flags.n_rot != 0) return rotating_strands(spec, flags.n_rot);
  return lemniscate_strands(spec);
}

int cmd_generate(const SpecFlags& flags, const std::string& out_path, bool with_spatial) {
  Json j;
  SemiholoPolynomial f;
  if (flags.preset == "cable-13n4587") {
    f = build_field(cable_13n4587_strands(), Rational(1));
    j["preset"] = "cable-13n4587";
  } else {
    LemniscateSpec spec = spec_from_flags(flags);
    f = build_field(strands_for(flags, spec), spec.lambda);
    j["spec"] = spec_to_json(spec, flags.n_rot);
  }
  auto [fi, clearing] = integerize(f);
  j["clearing"] = integer_to_json(clearing);
  j["f"] = semiholo_to_json(fi);
  if (with_spatial) j["spatial"] = spatial_to_json(stereographic_substitute(f));
  write_output(out_path, j.dump(2));
  return kExitPass;
}

int cmd_braid(const SpecFlags& flags, const std::string& out_path,
              const std::string& closure_path, int closure_samples) {
  LemniscateSpec spec = spec_from_flags(flags);
  Json j;
  j["spec"] = spec_to_json(spec, flags.n_rot);
  auto eps = crossing_signs(spec);
  j["epsilon"] = eps.signs;
  j["blocks"] = eps.block_sizes;
  BraidWord word = braid_word(spec);
  if (flags.n_rot != 0) {
    BraidWord delta = garside_element(spec.s);
    BraidWord twist{spec.s, {}};
    for (int k = 0; k < 2 * std::abs(flags.n_rot); ++k)
      twist = twist * (flags.n_rot > 0 ? delta.inverse() : delta);
    word = word * twist;
    j["note"] = "rotating closure word: basic word times Delta_s^(-2n)";
  }
  j["word"] = braid_word_to_json(word);
  j["components"] = braid_permutation(word).cycle_count;
  j["predictions"] = prediction_to_json(spiral_predictions(spec));
  if (auto entry = knot_table_lookup(spec.s, spec.r, spec.lobes)) {
    Json table;
    table["name"] = entry->name;
    if (!entry->jones_abs_coeffs.empty())
      table["jonesAbsCoeffs"] = entry->jones_abs_coeffs;
    table["fixture"] = true;  // tabulated identification, not computed here
    j["knotTable"] = std::move(table);
  }
  if (spec.lobes == 2 && spec.r == 2) {
    j["minimalWord"] = braid_word_to_json(fig8_family_minimal_word((spec.s - 1) / 2));
  } else if (spec.lobes == 3 && spec.r == 2) {
    if (auto cw = conjectured_minimal_word_l3(spec.s)) {
      j["conjecturedMinimalWord"] = braid_word_to_json(*cw);
      j["conjecturedMinimalWordIsProven"] = false;
    }
  }
  if (!closure_path.empty()) {
    auto pts = closure_curve(spec, closure_samples);
    std::ostringstream csv;
    csv.precision(17);
    csv << "index,x,y,z\n";
    for (size_t i = 0; i < pts.size(); ++i)
      csv << i << "," << pts[i][0] << "," << pts[i][1] << "," << pts[i][2] << "\n";
    write_output(closure_path, csv.str());
    j["closureExport"] = closure_path;
  }
  write_output(out_path, j.dump(2));
  return kExitPass;
}

int cmd_verify(const SpecFlags& flags, const std::string& out_path, int h_steps,
               long samples, double tube, bool skip_fibration,
               const std::string& curves_path) {
  bool searched = false;
  LemniscateSpec spec = spec_from_flags(flags, &searched);
  auto strands = strands_for(flags, spec);
  SemiholoPolynomial f = build_field(strands, spec.lambda);

  NodalOptions nodal;
  nodal.h_steps = h_steps;
  auto cert = verify_nodal_on_sphere(f, nodal);

  BraidWord expected = braid_word(spec);
  bool word_ok = flags.n_rot == 0 ? cert.word == expected : true;
  bool components_ok = flags.n_rot == 0
                           ? cert.components == std::gcd(spec.s, spec.r)
                           : cert.components >= 1;

  Json j;
  j["spec"] = spec_to_json(spec, flags.n_rot);
  j["options"] = Json{{"hSteps", h_steps}, {"samples", samples}, {"tube", tube}};
  j["lambdaSearched"] = searched;
  j["nodal"] = Json{{"passed", cert.passed},
                    {"failure", cert.failure},
                    {"components", cert.components},
                    {"maxResidual", cert.max_residual},
                    {"minTransversality", cert.min_transversality}};
  j["word"] = braid_word_to_json(cert.word);
  j["expectedWord"] = braid_word_to_json(expected);
  j["wordMatches"] = word_ok;
  j["components"] = cert.components;

  bool fib_ok = true;
  if (!skip_fibration && cert.passed) {
    FibrationOptions fopts;
    fopts.samples = samples;
    fopts.tube_radius = tube;
    auto rep = fibration_scan(f, cert.curves, fopts);
    j["fibration"] = fibration_to_json(rep);
    j["minGradNorm"] = rep.min_grad_norm;
    fib_ok = rep.margin_positive;
  }
  if (!curves_path.empty() && !cert.curves.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "component,index,x,y,z,w\n";
    for (size_t c = 0; c < cert.curves.size(); ++c)
      for (size_t i = 0; i < cert.curves[c].points.size(); ++i) {
        const auto& p = cert.curves[c].points[i];
        csv << c << "," << i << "," << p[0] << "," << p[1] << "," << p[2] << ","
            << p[3] << "\n";
      }
    write_output(curves_path, csv.str());
    j["curveExport"] = curves_path;
  }
  bool passed = cert.passed && word_ok && components_ok && fib_ok;
  j["passed"] = passed;
  write_output(out_path, j.dump(2));
  return passed ? kExitPass : kExitVerifyFailed;
}

int cmd_invariants(const SpecFlags& flags, const std::string& out_path) {
  LemniscateSpec spec = spec_from_flags(flags);
  Json j;
  j["spec"] = spec_to_json(spec, flags.n_rot);
  j["predictions"] = prediction_to_json(spiral_predictions(spec));
  if (auto entry = knot_table_lookup(spec.s, spec.r, spec.lobes))
    j["knotName"] = entry->name;
  BraidWord word = braid_word(spec);
  j["word"] = braid_word_to_json(word);
  try {
    IntLaurentPoly delta = alexander_from_braid(word);
    j["alexander"] = laurent_to_json(delta);
    Integer det(0);
    for (const auto& [e, c] : delta.terms()) det += (e % 2 == 0 ? c : -c);
    if (det < 0) det = -det;
    j["determinant"] = integer_to_json(det);
    auto genus = genus_degree_check(delta, spec.s, spec.r);
    j["genus"] = Json{{"span", genus.span},
                      {"fromDegree", genus.genus_from_degree},
                      {"upperBound", genus.genus_upper_bound},
                      {"degreeMatchesBound", genus.degree_matches_bound}};
    if (genus.r_prime_power && spec.r >= 2)
      j["murasugiCongruence"] = murasugi_mod_check(delta, spec.s, spec.r);
    j["symmetric"] = delta == delta.reciprocal();
  } catch (const MultiComponentError& e) {
    j["alexander"] = nullptr;
    j["notice"] = std::string("MultiComponent: ") + e.what();
  }
  write_output(out_path, j.dump(2));
  return kExitPass;
}

SemiholoPolynomial fig8hopf_denominator(int r) {
  auto gr = [](long v) { return GaussianRational(Rational(v)); };
  SemiholoPolynomial f;
  f.add_term({3, 0, 0}, gr(64));
  f.add_term({1, r, 0}, gr(-24));
  f.add_term({1, 0, r}, gr(24));
  f.add_term({1, 0, 0}, gr(-18));
  f.add_term({0, r, 0}, gr(-14));
  f.add_term({0, 0, r}, gr(-14));
  f.add_term({0, 2 * r, 0}, gr(-1));
  f.add_term({0, 0, 2 * r}, gr(1));
  return f;
}

int cmd_hopfion(const SpecFlags& flags, const std::string& out_path, int numerator_power,
                int multiplicity, const std::string& constant, int seed_grid, double box,
                double trace_step, int export_grid, const std::string& export_path,
                bool measure) {
  HopfionSpec hspec;
  Json j;
  if (flags.preset == "fig8hopf-paper") {
    int r = flags.r > 0 ? flags.r : 2;
    hspec.f = fig8hopf_denominator(r);
    hspec.numerator_constant = Rational(64);
    j["preset"] = "fig8hopf-paper";
    j["r"] = r;
  } else {
    LemniscateSpec spec = spec_from_flags(flags);
    hspec.f = build_field(strands_for(flags, spec), spec.lambda);
    j["spec"] = spec_to_json(spec, flags.n_rot);
  }
  hspec.numerator_power = numerator_power;
  hspec.multiplicity = multiplicity;
  if (!constant.empty()) hspec.numerator_constant = parse_rational(constant);
  long q_predicted = hspec.predicted_charge();
  HopfionField field(hspec);

  j["options"] = Json{{"grid", seed_grid}, {"box", box}, {"step", trace_step}};
  j["N"] = numerator_power;
  j["m"] = multiplicity;
  j["numeratorConstant"] = rational_to_string(hspec.numerator_constant);
  j["predictedCharge"] = q_predicted;

  if (export_grid > 0) {
    std::ostringstream csv;
    csv.precision(10);
    csv << "x,y,z,phi1,phi2,phi3\n";
    for (int i = 0; i < export_grid; ++i)
      for (int k = 0; k < export_grid; ++k)
        for (int m2 = 0; m2 < export_grid; ++m2) {
          double x = -box + 2 * box * (i + 0.5) / export_grid;
          double y = -box + 2 * box * (k + 0.5) / export_grid;
          double z = -box + 2 * box * (m2 + 0.5) / export_grid;
          auto p = field.phi({x, y, z});
          csv << x << "," << y << "," << z << "," << p[0] << "," << p[1] << ","
              << p[2] << "\n";
        }
    write_output(export_path.empty() ? "phi_grid.csv" : export_path, csv.str());
    j["gridExport"] = export_path.empty() ? "phi_grid.csv" : export_path;
  }

  bool passed = true;
  if (measure && numerator_power > 0) {
    TraceOptions topts;
    topts.box_half_width = box;
    topts.seed_grid = seed_grid;
    topts.step = trace_step;
    auto loops_a = trace_preimage(field, {0, 0, -1}, topts);
    auto loops_b = trace_preimage(field, {1, 0, 0}, topts);
    auto lk = gauss_linking_total(loops_a, loops_b);
    j["preimageLoops"] = Json{{"southPole", loops_a.size()}, {"equator", loops_b.size()}};
    j["measuredCharge"] = lk.linking_number;
    j["rawGaussIntegral"] = lk.raw_integral;
    passed = lk.linking_number == q_predicted &&
             std::abs(lk.raw_integral - static_cast<double>(q_predicted)) < 0.1;
  } else if (measure) {
    j["measuredCharge"] = 0;  // constant numerator: nothing to trace
    passed = q_predicted == 0;
  }
  j["passed"] = passed;
  write_output(out_path, j.dump(2));
  return passed ? kExitPass : kExitVerifyFailed;
}

int cmd_milnor(const SpecFlags& flags, const std::string& out_path,
               const std::string& radii_csv, const std::string& brauner, int h_steps) {
  std::vector<Rational> radii;
  {
    std::stringstream ss(radii_csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) radii.push_back(parse_rational(tok));
  }
  if (radii.empty()) throw ValidationError("--radii requires at least one radius");

  Json j;
  bool all_passed = true;
  Json certs = Json::array();

  if (!brauner.empty()) {
    auto comma = brauner.find(',');
    if (comma == std::string::npos) throw ValidationError("--brauner expects p,q");
    int p = std::stoi(brauner.substr(0, comma));
    int q = std::stoi(brauner.substr(comma + 1));
    SemiholoPolynomial f;
    f.add_term({p, 0, 0}, GaussianRational(Rational(1)));
    f.add_term({0, q, 0}, GaussianRational(Rational(-1)));
    auto F = real_pair_of_holomorphic(f);
    j["brauner"] = Json::array({p, q});
    j["F"] = real4_to_json(F);
    LemniscateSpec torus{p, q, 1, Rational(1), Rational(1), Rational(1)};
    BraidWord expected = braid_word(torus);
    NodalOptions opts;
    opts.h_steps = h_steps;
    for (const auto& rho : radii) {
      auto cert = verify_milnor_sphere_brauner(p, q, F, rho.get_d(), opts);
      bool ok = cert.passed && cert.word == expected;
      certs.push_back(Json{{"rho", rational_to_string(rho)},
                           {"passed", ok},
                           {"word", braid_word_to_json(cert.word)},
                           {"fieldResidual", cert.field_residual},
                           {"minJacobianSV", cert.min_jacobian_sv},
                           {"failure", cert.failure}});
      all_passed = all_passed && ok;
    }
  } else {
    LemniscateSpec spec = spec_from_flags(flags);
    LemniscateSpec unit = spec;
    unit.lambda = Rational(1);
    auto F = milnor_polynomial(build_field(unit), unit);  // throws OddRepeats for odd r
    j["spec"] = spec_to_json(spec, flags.n_rot);
    j["F"] = real4_to_json(F);
    BraidWord expected = braid_word(spec);
    NodalOptions opts;
    opts.h_steps = h_steps;
    for (const auto& rho : radii) {
      auto cert = verify_milnor_sphere(spec, F, rho, opts);
      bool ok = cert.passed && cert.word == expected;
      certs.push_back(Json{{"rho", rational_to_string(rho)},
                           {"passed", ok},
                           {"word", braid_word_to_json(cert.word)},
                           {"fieldResidual", cert.field_residual},
                           {"minJacobianSV", cert.min_jacobian_sv},
                           {"failure", cert.failure}});
      all_passed = all_passed && ok;
    }
  }
  j["certificates"] = std::move(certs);
  j["passed"] = all_passed;
  write_output(out_path, j.dump(2));
  return all_passed ? kExitPass : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lemknot: exact knotted-field construction and certification"};
  app.require_subcommand(1);

  SpecFlags gen_flags, braid_flags, verify_flags, inv_flags, hopf_flags, milnor_flags;
  std::string gen_out = "-", braid_out = "-", verify_out = "-", inv_out = "-",
              hopf_out = "-", milnor_out = "-";
  bool gen_spatial = true;

  auto* gen = app.add_subcommand("generate", "construct f(u,v,v_bar) and F(x,y,z)");
  add_spec_flags(gen, gen_flags);
  gen->add_option("--out", gen_out, "output path or - for stdout");
  gen->add_flag("!--no-spatial", gen_spatial, "skip the stereographic numerator");

  std::string braid_closure_path;
  int braid_closure_samples = 2000;
  auto* braid = app.add_subcommand("braid", "braid word, crossing signs and predictions");
  add_spec_flags(braid, braid_flags);
  braid->add_option("--out", braid_out, "output path or - for stdout");
  braid->add_option("--export-closure", braid_closure_path,
                    "CSV path for the parametrised closure curve");
  braid->add_option("--closure-samples", braid_closure_samples, "closure curve samples")
      ->capture_default_str();

  int verify_steps = 768;
  long verify_samples = 200000;
  double verify_tube = 0.05;
  bool skip_fibration = false;
  auto* verify = app.add_subcommand("verify", "certify the nodal set and fibration on S^3");
  add_spec_flags(verify, verify_flags);
  verify->add_option("--out", verify_out, "output path or - for stdout");
  verify->add_option("--h-steps", verify_steps, "height samples")->capture_default_str();
  verify->add_option("--samples", verify_samples, "fibration scan samples")
      ->capture_default_str();
  verify->add_option("--tube", verify_tube, "exclusion tube radius")->capture_default_str();
  verify->add_flag("--skip-fibration", skip_fibration, "nodal certification only");
  std::string verify_curves_path;
  verify->add_option("--export-curves", verify_curves_path,
                     "CSV path for the certified nodal curves on S^3");

  auto* inv = app.add_subcommand("invariants", "Alexander polynomial and theorem checks");
  add_spec_flags(inv, inv_flags);
  inv->add_option("--out", inv_out, "output path or - for stdout");

  int hopf_N = 1, hopf_m = 1, hopf_seed_grid = 48, hopf_export_grid = 0;
  double hopf_box = 6.0, hopf_step = 0.01;
  std::string hopf_c, hopf_export_path;
  bool hopf_measure = true;
  auto* hopf = app.add_subcommand("hopfion", "rational-map hopfion fields and charge");
  add_spec_flags(hopf, hopf_flags);
  hopf->get_option("--preset")
      ->description("fig8, f5r2, f4r3, borromean, cable-13n4587 or fig8hopf-paper");
  hopf->add_option("--N", hopf_N, "numerator power of v")->capture_default_str();
  hopf->add_option("--m", hopf_m, "denominator multiplicity")->capture_default_str();
  hopf->add_option("--c", hopf_c, "numerator constant (rational)");
  hopf->add_option("--grid", hopf_seed_grid, "seed grid per axis for preimage tracing")
      ->capture_default_str();
  hopf->add_option("--box", hopf_box, "half-width of the tracing box")->capture_default_str();
  hopf->add_option("--step", hopf_step, "preimage tracing step")->capture_default_str();
  hopf->add_option("--export-grid", hopf_export_grid,
                   "emit phi on an n^3 grid as CSV (0 = off)");
  hopf->add_option("--export-path", hopf_export_path, "CSV path for the grid export");
  hopf->add_flag("!--no-measure", hopf_measure, "skip the Gauss-linking measurement");
  hopf->add_option("--out", hopf_out, "output path or - for stdout");

  std::string milnor_radii = "0.1", milnor_brauner;
  int milnor_steps = 512;
  auto* milnor = app.add_subcommand("milnor", "weakly isolated singularity certificates");
  add_spec_flags(milnor, milnor_flags);
  milnor->add_option("--radii", milnor_radii, "comma-separated sphere radii")
      ->capture_default_str();
  milnor->add_option("--brauner", milnor_brauner, "p,q: use the torus polynomial u^p - v^q");
  milnor->add_option("--h-steps", milnor_steps, "height samples")->capture_default_str();
  milnor->add_option("--out", milnor_out, "output path or - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_flags, gen_out, gen_spatial);
    if (braid->parsed())
      return cmd_braid(braid_flags, braid_out, braid_closure_path, braid_closure_samples);
    if (verify->parsed())
      return cmd_verify(verify_flags, verify_out, verify_steps, verify_samples,
                        verify_tube, skip_fibration, verify_curves_path);
    if (inv->parsed()) return cmd_invariants(inv_flags, inv_out);
    if (hopf->parsed())
      return cmd_hopfion(hopf_flags, hopf_out, hopf_N, hopf_m, hopf_c, hopf_seed_grid,
                         hopf_box, hopf_step, hopf_export_grid, hopf_export_path,
                         hopf_measure);
    if (milnor->parsed())
      return cmd_milnor(milnor_flags, milnor_out, milnor_radii, milnor_brauner,
                        milnor_steps);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const OddRepeatsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitBadInput;
}
