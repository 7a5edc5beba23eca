#include "rmpslab/report.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rmpslab/config.hpp"

namespace rmpslab {

namespace {

// shortest representation that round-trips; locale-independent
std::string fmt_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::filesystem::path prepare_dir(const ExperimentReport& report) {
  const std::filesystem::path dir(report.config.output_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["experiment"] = experiment_kind_name(report.config.kind);
  j["config"] = nlohmann::json::parse(serialize_config(report.config));
  j["seed"] = report.seed;
  j["wallclock_seconds"] = report.wallclock_seconds;
  j["all_pass"] = all_checks_pass(report);

  nlohmann::json records = nlohmann::json::array();
  for (const QuantityRecord& r : report.records) {
    nlohmann::json e;
    e["name"] = r.name;
    e["mean"] = r.mean;
    e["stderr"] = r.stderr_;
    e["samples"] = r.samples;
    if (r.exact) e["exact_value"] = *r.exact;
    if (r.bound) e["bound_value"] = *r.bound;
    e["pass"] = r.pass;
    records.push_back(std::move(e));
  }
  j["records"] = std::move(records);
  j["extras"] = report.extras;
  return j;
}

std::string write_report_json(const ExperimentReport& report) {
  const auto path = prepare_dir(report) / "report.json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << report_to_json(report).dump(2) << "\n";
  return path.string();
}

std::string write_samples_csv(const ExperimentReport& report) {
  const auto path = prepare_dir(report) / "samples.csv";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "sample_index,seed_index,quantity,raw_value,normalized_value\n";
  const SampleMatrix& m = report.samples;
  for (std::size_t s = 0; s < m.samples; ++s)
    for (const SampleQuantity& q : report.csv_quantities) {
      const double raw = m.at(s, static_cast<std::size_t>(q.raw_col));
      const double norm =
          q.normalized_col < 0 ? raw : m.at(s, static_cast<std::size_t>(q.normalized_col));
      out << s << ',' << s << ',' << q.name << ',' << fmt_double(raw) << ',' << fmt_double(norm)
          << '\n';
    }
  return path.string();
}

std::string render_plot_script(const ExperimentReport& report) {
  if (report.records.empty())
    throw std::invalid_argument("plot script: report has no records to plot");

  std::ostringstream os;
  os << "# gnuplot script generated by rmps-lab (" << experiment_kind_name(report.config.kind)
     << ")\n";
  os << "set terminal pngcairo size 900,600\nset output 'report.png'\n";
  os << "set key outside\nset grid\n";

  const bool sweep = report.extras.contains("sweep");
  if (sweep) {
    os << "set xlabel 'chain length n'\nset ylabel 'annealed S2 = -log E tr rho_A^2'\n";
    os << "$sweep << EOD\n# n s2_estimate s2_exact\n";
    for (const auto& pt : report.extras["sweep"])
      os << pt["n"].get<int>() << ' ' << fmt_double(pt["s2_estimate"].get<double>()) << ' '
         << fmt_double(pt["s2_exact"].get<double>()) << '\n';
    os << "EOD\n";
    os << "plot $sweep using 1:2 with linespoints title 'estimate', \\\n"
       << "     $sweep using 1:3 with lines dashtype 2 title 'exact'\n";
    return os.str();
  }

  os << "set xlabel 'record'\nset ylabel 'value'\n";
  os << "set xrange [-0.5:" << (report.records.size() - 0.5) << "]\n";
  os << "set xtics rotate by -35 (";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    if (i) os << ", ";
    os << "'" << report.records[i].name << "' " << i;
  }
  os << ")\n";
  os << "$records << EOD\n# idx mean 3sigma exact bound\n";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const QuantityRecord& r = report.records[i];
    os << i << ' ' << fmt_double(r.mean) << ' ' << fmt_double(3.0 * r.stderr_) << ' '
       << (r.exact ? fmt_double(*r.exact) : "nan") << ' '
       << (r.bound ? fmt_double(*r.bound) : "nan") << '\n';
  }
  os << "EOD\n";
  os << "plot $records using 1:2:3 with yerrorbars pt 7 title 'estimate (3 sigma)', \\\n"
     << "     $records using 1:4 with points pt 4 ps 2 title 'exact', \\\n"
     << "     $records using 1:5 with points pt 2 ps 2 title 'bound'\n";
  return os.str();
}

std::string write_plot_script(const ExperimentReport& report) {
  const std::string text = render_plot_script(report);
  const auto path = prepare_dir(report) / "plot.gp";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  return path.string();
}

}  // namespace rmpslab
