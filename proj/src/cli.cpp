#include "kgen/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "kgen/data.hpp"
#include "kgen/distributions.hpp"
#include "kgen/fitting.hpp"
#include "kgen/gof.hpp"
#include "kgen/inequality.hpp"
#include "kgen/mixture.hpp"

namespace kgen::cli {

namespace {

struct Options {
  std::string model = "kgen";
  std::optional<double> alpha, beta, kappa, q, p;
  std::optional<double> theta_neg, theta_zero, neg_shape, neg_scale;
  std::optional<double> zero_threshold;
  std::string sweep;
  std::optional<std::string> weights;
  std::uint64_t seed = 1;
  std::optional<std::size_t> n;
  std::size_t grid = 200;
  std::optional<double> xmin, xmax;
  std::optional<std::size_t> lorenz_grid;
  bool drop_nonpositive = false;
  std::optional<std::string> output;
  std::size_t bootstrap = 0;
  std::string models = "kgen,weibull,exponential,singh-maddala,dagum";
  std::size_t max_iterations = 5000;
  double param_tolerance = 1e-8;
  double loglik_tolerance = 1e-8;
  std::string input;
};

// Raised for invalid flags or values; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag --") + flag);
  return *v;
}

// Parameter flags of a model, in parameter_names order.
std::vector<std::string> flag_names(ModelKind kind) {
  switch (kind) {
    case ModelKind::kgen: return {"alpha", "beta", "kappa"};
    case ModelKind::weibull: return {"alpha", "beta"};
    case ModelKind::exponential: return {"beta"};
    case ModelKind::singh_maddala: return {"alpha", "beta", "q"};
    case ModelKind::dagum: return {"alpha", "beta", "p"};
  }
  return {};
}

std::map<std::string, std::optional<double>> flag_values(const Options& o) {
  return {{"alpha", o.alpha}, {"beta", o.beta}, {"kappa", o.kappa}, {"q", o.q}, {"p", o.p}};
}

Distribution distribution_from_flags(ModelKind kind, std::map<std::string, std::optional<double>> values) {
  std::vector<double> params;
  for (const auto& name : flag_names(kind)) params.push_back(require(values[name], name.c_str()));
  return make_distribution(kind, params);
}

struct Sweep {
  std::string name;
  std::vector<double> values;
};

std::optional<Sweep> parse_sweep(const std::string& spec, ModelKind kind) {
  if (spec.empty()) return std::nullopt;
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size()) {
    throw UsageError("invalid --sweep '" + spec + "': expected NAME=v1,v2,...");
  }
  Sweep s;
  s.name = spec.substr(0, eq);
  const auto names = flag_names(kind);
  if (std::find(names.begin(), names.end(), s.name) == names.end()) {
    throw UsageError("invalid --sweep: '" + s.name + "' is not a parameter of model " +
                     std::string(model_name(kind)));
  }
  std::stringstream list(spec.substr(eq + 1));
  std::string item;
  while (std::getline(list, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || !std::isfinite(v)) {
      throw UsageError("invalid --sweep value '" + item + "'");
    }
    s.values.push_back(v);
  }
  if (s.values.empty() || spec.back() == ',') throw UsageError("invalid --sweep: empty value list");
  return s;
}

FitConfig fit_config(const Options& o) {
  FitConfig c;
  c.max_iterations = o.max_iterations;
  c.param_tolerance = o.param_tolerance;
  c.loglik_tolerance = o.loglik_tolerance;
  c.bootstrap_replicates = o.bootstrap;
  c.seed = o.seed;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

void write_row(std::ostream& out, const std::string& key, const std::string& value) {
  out << key << ',' << value << '\n';
}

void write_row(std::ostream& out, const std::string& key, double value) {
  write_row(out, key, format_number(value));
}

struct LoadedData {
  CsvData csv;
  std::size_t dropped_rows = 0;
  double dropped_weight = 0.0;
};

// Reads the input and enforces positive values for income models.
LoadedData load_positive(const Options& o) {
  LoadedData d{read_csv_file(o.input, o.weights), 0, 0.0};
  const auto& v = d.csv.sample.values();
  std::vector<double> keep_v, keep_w;
  std::vector<std::size_t> keep_lines;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double w = d.csv.sample.weights()[i];
    if (v[i] > 0.0) {
      keep_v.push_back(v[i]);
      keep_w.push_back(w);
      keep_lines.push_back(d.csv.lines[i]);
    } else if (o.drop_nonpositive) {
      ++d.dropped_rows;
      d.dropped_weight += w;
    } else {
      throw InputError("non-positive value " + format_number(v[i]) +
                           " is outside the model support (use --drop-nonpositive to drop such rows)",
                       d.csv.lines[i]);
    }
  }
  if (keep_v.empty()) throw InputError("no positive values left after dropping", 0);
  if (d.dropped_rows > 0) {
    d.csv.sample = WeightedSample(std::move(keep_v), std::move(keep_w));
    d.csv.lines = std::move(keep_lines);
  }
  return d;
}

void describe_weights(std::ostream& out, const CsvData& csv) {
  write_row(out, "weights", csv.weights_from_file ? "column:" + csv.weight_column
                                                  : std::string("none (equal weights assumed)"));
}

int cmd_fit(const Options& o, std::ostream& out) {
  const ModelKind kind = parse_model_kind(o.model);
  const FitConfig config = fit_config(o);
  const LoadedData d = load_positive(o);
  const WeightedSample& data = d.csv.sample;

  const FitResult fit = fit_mle(data, kind, config);
  const Distribution dist = fit.distribution();

  write_row(out, "field", "value");
  write_row(out, "model", std::string(model_name(kind)));
  write_row(out, "n", std::to_string(data.size()));
  write_row(out, "total_weight", data.total_weight());
  describe_weights(out, d.csv);
  if (o.drop_nonpositive) {
    write_row(out, "dropped_rows", std::to_string(d.dropped_rows));
    write_row(out, "dropped_weight_share", d.dropped_weight / (d.dropped_weight + data.total_weight()));
  }
  const auto names = parameter_names(kind);
  for (std::size_t i = 0; i < names.size(); ++i) write_row(out, names[i], fit.params[i]);
  if (fit.standard_errors) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      write_row(out, "stderr_" + names[i], (*fit.standard_errors)[i]);
    }
    write_row(out, "bootstrap_replicates", std::to_string(config.bootstrap_replicates));
  }
  write_row(out, "loglik", fit.loglik);
  write_row(out, "aic", fit.aic);
  write_row(out, "bic", fit.bic);
  write_row(out, "n_eff", fit.n_eff);
  write_row(out, "ks", ks_statistic(data, dist));
  write_row(out, "ks_note", "statistic only; no p-value because parameters were estimated from the data");
  write_row(out, "converged", fit.converged ? "true" : "false");
  write_row(out, "iterations", std::to_string(fit.iterations));
  return fit.converged ? kExitOk : kExitNotConverged;
}

int cmd_curves(const Options& o, std::ostream& out) {
  const ModelKind kind = parse_model_kind(o.model);
  const std::optional<Sweep> sweep = parse_sweep(o.sweep, kind);
  auto values = flag_values(o);

  std::vector<Distribution> members;
  std::vector<std::string> labels;
  if (sweep) {
    for (double v : sweep->values) {
      values[sweep->name] = v;
      members.push_back(distribution_from_flags(kind, values));
      labels.push_back("[" + sweep->name + "=" + format_number(v) + "]");
    }
  } else {
    members.push_back(distribution_from_flags(kind, values));
    labels.emplace_back();
  }

  double ref_scale = 0.0;
  for (const auto& m : members) {
    const double scale = parameters(m)[kind == ModelKind::exponential ? 0 : 1];
    ref_scale = ref_scale == 0.0 ? scale : std::min(ref_scale, scale);
  }
  const double xmin = o.xmin.value_or(1e-2 * ref_scale);
  const double xmax = o.xmax.value_or(1e3 * ref_scale);
  if (!(xmin > 0.0 && xmax > xmin)) throw UsageError("grid requires 0 < --xmin < --xmax");
  if (o.grid < 2) throw UsageError("--grid must be at least 2");

  out << "x";
  for (const auto& l : labels) out << ",pdf" << l;
  for (const auto& l : labels) out << ",ccdf" << l;
  out << '\n';
  const double span = std::log10(xmax / xmin);
  for (std::size_t i = 0; i < o.grid; ++i) {
    const double x = i + 1 == o.grid
                         ? xmax
                         : xmin * std::pow(10.0, span * static_cast<double>(i) /
                                                     static_cast<double>(o.grid - 1));
    out << format_number(x);
    for (const auto& m : members) out << ',' << format_number(pdf(m, x));
    for (const auto& m : members) out << ',' << format_number(ccdf(m, x));
    out << '\n';
  }
  return kExitOk;
}

void write_lorenz_table(std::ostream& out, std::size_t n, const std::function<double(double)>& curve) {
  out << "\nu,lorenz\n";
  for (std::size_t i = 0; i <= n; ++i) {
    const double u = i == n ? 1.0 : static_cast<double>(i) / static_cast<double>(n);
    out << format_number(u) << ',' << format_number(curve(u)) << '\n';
  }
}

int cmd_inequality(const Options& o, std::ostream& out) {
  if (o.lorenz_grid && *o.lorenz_grid < 1) throw UsageError("--lorenz-grid must be at least 1");
  if (!o.input.empty()) {
    const CsvData csv = read_csv_file(o.input, o.weights);
    const WeightedSample& data = csv.sample;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data.values()[i] < 0.0) {
        throw InputError("negative value " + format_number(data.values()[i]) +
                             " not allowed in inequality measures",
                         csv.lines[i]);
      }
    }
    write_row(out, "metric", "value");
    write_row(out, "mode", "empirical");
    describe_weights(out, csv);
    write_row(out, "mean", data.weighted_mean());
    write_row(out, "gini", sample_gini(data));
    write_row(out, "bottom50_share", sample_lorenz(0.5, data));
    write_row(out, "top10_share", 1.0 - sample_lorenz(0.9, data));
    write_row(out, "top1_share", 1.0 - sample_lorenz(0.99, data));
    if (o.lorenz_grid) write_lorenz_table(out, *o.lorenz_grid, [&](double u) { return sample_lorenz(u, data); });
    return kExitOk;
  }
  const ModelKind kind = parse_model_kind(o.model);
  const Distribution dist = distribution_from_flags(kind, flag_values(o));
  if (!moment_range(dist).contains(1.0)) {
    throw std::domain_error("mean does not exist for these parameters (needs alpha/kappa > 1)");
  }
  write_row(out, "metric", "value");
  write_row(out, "mode", "parametric");
  write_row(out, "model", std::string(model_name(kind)));
  write_row(out, "mean", mean(dist));
  write_row(out, "gini", gini(dist));
  write_row(out, "bottom50_share", lorenz(0.5, dist));
  write_row(out, "top10_share", percentile_share(0.9, 1.0, dist));
  write_row(out, "top1_share", percentile_share(0.99, 1.0, dist));
  if (o.lorenz_grid) write_lorenz_table(out, *o.lorenz_grid, [&](double u) { return lorenz(u, dist); });
  return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
  if (!o.n) throw UsageError("missing required flag --n");
  std::vector<double> draws;
  if (o.model == "mixture") {
    const double tn = o.theta_neg.value_or(0.0);
    const double tz = o.theta_zero.value_or(0.0);
    std::optional<Weibull> neg;
    if (tn > 0.0) neg = Weibull(require(o.neg_shape, "neg-shape"), require(o.neg_scale, "neg-scale"));
    const KappaParams pos(require(o.alpha, "alpha"), require(o.beta, "beta"), require(o.kappa, "kappa"));
    draws = sample_mixture(*o.n, NetWealthMixtureParams(tn, tz, 1.0 - tn - tz, neg, pos), o.seed);
  } else {
    const Distribution dist = distribution_from_flags(parse_model_kind(o.model), flag_values(o));
    Rng rng(o.seed, streams::kPrimary);
    draws = sample(dist, *o.n, rng);
  }
  out << "value\n";
  for (double v : draws) out << format_number(v) << '\n';
  return kExitOk;
}

std::vector<ModelKind> parse_models(const std::string& list) {
  std::vector<ModelKind> kinds;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) kinds.push_back(parse_model_kind(item));
  return kinds;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const std::vector<ModelKind> kinds = parse_models(o.models);
  if (kinds.size() < 2) throw UsageError("--models needs at least two models");
  FitConfig config = fit_config(o);
  config.bootstrap_replicates = 0;
  const LoadedData d = load_positive(o);
  const auto rows = compare(d.csv.sample, kinds, config);
  out << "rank,model,k,loglik,aic,bic,ks,tail_ks,converged\n";
  bool all_converged = true;
  for (const auto& r : rows) {
    out << r.rank << ',' << r.model << ',' << r.k << ',' << format_number(r.loglik) << ','
        << format_number(r.aic) << ',' << format_number(r.bic) << ',' << format_number(r.ks) << ','
        << format_number(r.tail_ks) << ',' << (r.converged ? "true" : "false") << '\n';
    all_converged = all_converged && r.converged;
  }
  return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_mixture_fit(const Options& o, std::ostream& out) {
  const FitConfig config = fit_config(o);
  const CsvData csv = read_csv_file(o.input, o.weights);
  const MixtureFitResult fit = fit_mixture(csv.sample, config, o.zero_threshold);
  const auto& m = fit.params;
  write_row(out, "field", "value");
  write_row(out, "n", std::to_string(csv.sample.size()));
  describe_weights(out, csv);
  write_row(out, "zero_threshold", fit.zero_threshold);
  write_row(out, "theta_neg", m.theta_neg());
  write_row(out, "theta_zero", m.theta_zero());
  write_row(out, "theta_pos", m.theta_pos());
  if (m.negative()) {
    write_row(out, "neg_shape", m.negative()->shape());
    write_row(out, "neg_scale", m.negative()->scale());
  }
  write_row(out, "alpha", m.positive().alpha());
  write_row(out, "beta", m.positive().beta());
  write_row(out, "kappa", m.positive().kappa().value());
  if (fit.positive.standard_errors) {
    const auto& se = *fit.positive.standard_errors;
    write_row(out, "stderr_alpha", se[0]);
    write_row(out, "stderr_beta", se[1]);
    write_row(out, "stderr_kappa", se[2]);
  }
  write_row(out, "k", std::to_string(fit.parameter_count));
  write_row(out, "loglik", fit.loglik);
  write_row(out, "aic", fit.aic);
  write_row(out, "bic", fit.bic);
  write_row(out, "converged", fit.converged ? "true" : "false");
  write_row(out, "iterations", std::to_string(fit.iterations));
  return fit.converged ? kExitOk : kExitNotConverged;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"kappa-generalized income and wealth distributions", "kgen"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; command-line flags take precedence");

  Options o;
  app.add_option("--model", o.model, "kgen, weibull, exponential, singh-maddala, dagum (sample also: mixture)");
  app.add_option("--alpha", o.alpha, "shape alpha (Weibull shape; Singh-Maddala/Dagum a)");
  app.add_option("--beta", o.beta, "scale beta (Weibull/exponential scale; Singh-Maddala/Dagum b)");
  app.add_option("--kappa", o.kappa, "tail deformation kappa in [0, 1)");
  app.add_option("--q", o.q, "Singh-Maddala q");
  app.add_option("--p", o.p, "Dagum p");
  app.add_option("--theta-neg", o.theta_neg, "mixture weight of negative net wealth");
  app.add_option("--theta-zero", o.theta_zero, "mixture weight of zero net wealth");
  app.add_option("--neg-shape", o.neg_shape, "Weibull shape of debt magnitudes");
  app.add_option("--neg-scale", o.neg_scale, "Weibull scale of debt magnitudes");
  app.add_option("--zero-threshold", o.zero_threshold, "|x| below this counts as zero wealth");
  app.add_option("--sweep", o.sweep, "NAME=v1,v2,... one curve column per value");
  app.add_option("--weights", o.weights, "weight column name");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--n", o.n, "number of draws");
  app.add_option("--grid", o.grid, "number of log-spaced x points");
  app.add_option("--xmin", o.xmin, "smallest grid point");
  app.add_option("--xmax", o.xmax, "largest grid point");
  app.add_option("--lorenz-grid", o.lorenz_grid, "emit N+1 Lorenz points");
  app.add_flag("--drop-nonpositive", o.drop_nonpositive, "drop values <= 0 and report the dropped mass");
  app.add_option("--output", o.output, "write the table to PATH instead of stdout");
  app.add_option("--bootstrap", o.bootstrap, "bootstrap replicates for standard errors (0 or >= 50)");
  app.add_option("--models", o.models, "comma-separated models for compare");
  app.add_option("--max-iterations", o.max_iterations, "simplex iterations per run");
  app.add_option("--param-tolerance", o.param_tolerance, "relative parameter tolerance");
  app.add_option("--loglik-tolerance", o.loglik_tolerance, "absolute log-likelihood tolerance");

  auto* fit = app.add_subcommand("fit", "weighted maximum-likelihood fit")->fallthrough();
  fit->add_option("input", o.input, "CSV with columns value[,weight]")->required();
  auto* curves = app.add_subcommand("curves", "PDF and CCDF over a log-spaced grid")->fallthrough();
  auto* inequality = app.add_subcommand("inequality", "mean, Gini, shares and Lorenz curve")->fallthrough();
  inequality->add_option("input", o.input, "CSV for empirical mode; omit for parametric mode");
  auto* sample_cmd = app.add_subcommand("sample", "draw from a model")->fallthrough();
  auto* compare_cmd = app.add_subcommand("compare", "fit several models and rank by AIC")->fallthrough();
  compare_cmd->add_option("input", o.input, "CSV with columns value[,weight]")->required();
  auto* mixture = app.add_subcommand("mixture-fit", "three-component net-wealth fit")->fallthrough();
  mixture->add_option("input", o.input, "CSV with columns value[,weight]")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    std::ostringstream buffer;
    int code = kExitOk;
    if (*fit) code = cmd_fit(o, buffer);
    else if (*curves) code = cmd_curves(o, buffer);
    else if (*inequality) code = cmd_inequality(o, buffer);
    else if (*sample_cmd) code = cmd_sample(o, buffer);
    else if (*compare_cmd) code = cmd_compare(o, buffer);
    else if (*mixture) code = cmd_mixture_fit(o, buffer);

    if (o.output) {
      std::ofstream file(*o.output, std::ios::binary);
      if (!file) throw UsageError("cannot write '" + *o.output + "'");
      file << buffer.str();
    } else {
      out << buffer.str();
    }
    if (code == kExitNotConverged) err << "warning: the optimizer did not converge\n";
    return code;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotConverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace kgen::cli
