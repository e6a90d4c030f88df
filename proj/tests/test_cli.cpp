#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = vnpda::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("vnpda_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> with_threads(unsigned threads, std::vector<std::string> args) {
  args.insert(args.begin(), {"--threads", std::to_string(threads)});
  return args;
}

// A small simulated train/test pair shared by several cases.
const fs::path& small_data() {
  static const fs::path dir = [] {
    const fs::path d = scratch("data");
    const Outcome o = run_cli({"simulate", "--setting", "1", "--n-train", "40", "--n-test", "60",
                               "--p", "12", "--n-discriminative", "3", "--seed", "5", "--out-dir",
                               d.string()});
    REQUIRE(o.code == 0);
    return d;
  }();
  return dir;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("help lists a default or REQUIRED for every option") {
  const std::vector<std::string> flags{"-h,--help", "--variables-in-rows", "--paper-protocol",
                                       "--timing"};
  for (const std::string sub : {"", "simulate", "select-c", "fit", "predict", "cv", "study", "bf",
                                "density", "bench"}) {
    std::vector<std::string> args;
    if (!sub.empty()) args.push_back(sub);
    args.push_back("--help");
    const Outcome o = run_cli(args);
    CAPTURE(sub);
    REQUIRE(o.code == 0);
    std::istringstream in(o.out);
    std::string line;
    int options = 0;
    while (std::getline(in, line)) {
      if (line.rfind("  -", 0) != 0) continue;
      ++options;
      std::istringstream words(line);
      std::string name;
      words >> name;
      const bool is_flag = std::find(flags.begin(), flags.end(), name) != flags.end();
      CAPTURE(line);
      CHECK((is_flag || line.find('[') != std::string::npos ||
             line.find("REQUIRED") != std::string::npos));
    }
    CHECK(options > 1);
  }
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"fit", "--no-such-flag"}).code == 1);
  CHECK(run_cli({"bogus"}).code == 1);
  CHECK(run_cli({"fit", "--train", "/nonexistent/train.csv"}).code == 1);
  const std::string train = (small_data() / "train.csv").string();
  const Outcome bad_u = run_cli({"fit", "--train", train, "--u", "1"});
  CHECK(bad_u.code == 1);
  CHECK(bad_u.err.find("--u") != std::string::npos);
  CHECK(run_cli({"simulate", "--setting", "7"}).code == 1);
  CHECK(run_cli({"fit", "--train", train, "--c", "1", "--report", "r.json"}).code == 1);
  CHECK(run_cli({"predict", "--model", "/nonexistent/model.json", "--data", train}).code == 1);
  const fs::path dir = scratch("malformed");
  write_text(dir / "bad.csv", "a,b,label\n1,2,1\n3\n");
  CHECK(run_cli({"bf", "--data", (dir / "bad.csv").string()}).code == 1);
}

TEST_CASE("simulate is deterministic") {
  const fs::path a = scratch("sim_a");
  const fs::path b = scratch("sim_b");
  const std::vector<std::string> base{"simulate", "--setting", "3", "--n-train", "30", "--n-test",
                                      "20", "--p", "8", "--n-discriminative", "2", "--seed", "11"};
  auto args_a = base;
  args_a.insert(args_a.end(), {"--out-dir", a.string()});
  auto args_b = base;
  args_b.insert(args_b.end(), {"--out-dir", b.string()});
  REQUIRE(run_cli(with_threads(1, args_a)).code == 0);
  REQUIRE(run_cli(with_threads(4, args_b)).code == 0);
  for (const char* f : {"train.csv", "test.csv", "truth.csv"}) {
    CHECK(slurp(a / f) == slurp(b / f));
  }
  const auto truth = csv_rows(slurp(a / "truth.csv"));
  REQUIRE(truth.size() == 9);
  CHECK(truth[1] == std::vector<std::string>{"V1", "1"});
  CHECK(truth[3] == std::vector<std::string>{"V3", "0"});
}

TEST_CASE("file outputs are identical across runs and thread counts") {
  const std::string train = (small_data() / "train.csv").string();
  const std::string test = (small_data() / "test.csv").string();
  const fs::path dir = scratch("determinism");

  struct Case {
    std::string name;
    std::vector<std::string> args;  // "{out}" is replaced by a per-run path
  };
  const std::vector<Case> cases{
      {"select-c", {"select-c", "--train", train, "--out", "{out}"}},
      {"fit", {"fit", "--train", train, "--out", "{out}", "--grid", "1,10,100"}},
      {"fit-c", {"fit", "--train", train, "--out", "{out}", "--c", "2"}},
      {"bf", {"bf", "--data", train, "--c", "3", "--out", "{out}"}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    std::vector<std::string> outputs;
    for (unsigned threads : {1u, 1u, 4u}) {
      const fs::path out = dir / (c.name + "_" + std::to_string(outputs.size()));
      std::vector<std::string> args = c.args;
      for (auto& s : args) {
        if (s == "{out}") s = out.string();
      }
      const Outcome o = run_cli(with_threads(threads, args));
      REQUIRE(o.code == 0);
      outputs.push_back(slurp(out));
    }
    CHECK(!outputs[0].empty());
    CHECK(outputs[0] == outputs[1]);
    CHECK(outputs[0] == outputs[2]);
  }

  // predict and density read the model written above.
  const std::string model = (dir / "fit-c_0").string();
  for (const auto& args :
       std::vector<std::vector<std::string>>{{"predict", "--model", model, "--data", test},
                                             {"density", "--model", model, "--variable", "V2",
                                              "--points", "50"}}) {
    const Outcome one = run_cli(with_threads(1, args));
    const Outcome four = run_cli(with_threads(4, args));
    REQUIRE(one.code == 0);
    CHECK(one.out == four.out);
    CHECK(one.out.size() > 100);
  }
}

TEST_CASE("cv and study directories are reproducible") {
  const std::string train = (small_data() / "train.csv").string();
  std::vector<fs::path> cv_dirs;
  std::vector<fs::path> study_dirs;
  for (unsigned threads : {1u, 4u}) {
    const fs::path cv = scratch("cv_" + std::to_string(threads));
    REQUIRE(run_cli(with_threads(threads, {"cv", "--data", train, "--k", "3", "--seed", "2",
                                           "--grid", "1,100", "--out-dir", cv.string()}))
                .code == 0);
    cv_dirs.push_back(cv);
    const fs::path study = scratch("study_" + std::to_string(threads));
    REQUIRE(run_cli(with_threads(threads, {"study", "--setting", "2", "--n-train", "30",
                                           "--n-test", "40", "--p", "10", "--n-discriminative",
                                           "2", "--reps", "2", "--grid", "1,100", "--out-dir",
                                           study.string()}))
                .code == 0);
    study_dirs.push_back(study);
  }
  for (const char* f : {"folds.csv", "selection_rates.csv", "cv_summary.json"}) {
    CHECK(slurp(cv_dirs[0] / f) == slurp(cv_dirs[1] / f));
  }
  for (const char* f : {"runs.csv", "selection_rates.csv", "study_summary.json"}) {
    CHECK(slurp(study_dirs[0] / f) == slurp(study_dirs[1] / f));
  }
  const auto folds = csv_rows(slurp(cv_dirs[0] / "folds.csv"));
  CHECK(folds.size() == 4);
  CHECK(folds[0].back() == "c");
  const auto runs = csv_rows(slurp(study_dirs[0] / "runs.csv"));
  REQUIRE(runs.size() == 5);
  CHECK(runs[1][1] == "vnpda");
  CHECK(runs[2][1] == "gnb");
}

TEST_CASE("bench keeps the requested sizes") {
  const std::vector<std::string> args{"bench", "--n", "20", "--p", "8,16", "--repeats", "1",
                                      "--grid", "1,100"};
  const Outcome one = run_cli(with_threads(1, args));
  const Outcome two = run_cli(with_threads(2, args));
  REQUIRE(one.code == 0);
  REQUIRE(two.code == 0);
  const auto a = csv_rows(one.out);
  const auto b = csv_rows(two.out);
  REQUIRE(a.size() == 3);
  REQUIRE(b.size() == 3);
  CHECK(a[0] == std::vector<std::string>{"n", "p", "seconds"});
  for (std::size_t r = 1; r < a.size(); ++r) {
    CHECK(a[r][0] == b[r][0]);
    CHECK(a[r][1] == b[r][1]);
    CHECK(std::stod(a[r][2]) >= 0.0);
  }
  CHECK(a[1][1] == "8");
  CHECK(a[2][1] == "16");
}

TEST_CASE("fit then predict on the training file reproduces the selection error") {
  const std::string train = (small_data() / "train.csv").string();
  const fs::path dir = scratch("resub");
  const Outcome sel =
      run_cli({"select-c", "--train", train, "--out", (dir / "report.json").string()});
  REQUIRE(sel.code == 0);
  const auto pos = sel.out.find("resubstitution_error = ");
  REQUIRE(pos != std::string::npos);
  const double resub = std::stod(sel.out.substr(pos + 23));

  REQUIRE(run_cli({"fit", "--train", train, "--report", (dir / "report.json").string(), "--out",
                   (dir / "model.json").string()})
              .code == 0);
  REQUIRE(run_cli({"fit", "--train", train, "--out", (dir / "model_direct.json").string()})
              .code == 0);
  CHECK(slurp(dir / "model.json") == slurp(dir / "model_direct.json"));

  const Outcome pred = run_cli({"predict", "--model", (dir / "model.json").string(), "--data",
                                train, "--out", (dir / "pred.csv").string()});
  REQUIRE(pred.code == 0);
  const auto epos = pred.out.find("classification_error = ");
  REQUIRE(epos != std::string::npos);
  CHECK(std::stod(pred.out.substr(epos + 23)) == doctest::Approx(resub).epsilon(1e-12));

  const auto rows = csv_rows(slurp(dir / "pred.csv"));
  REQUIRE(rows.size() == 41);
  CHECK(rows[0] == std::vector<std::string>{"row", "psi", "predicted", "label"});
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double psi = std::stod(rows[r][1]);
    CHECK(psi > 0.0);
    CHECK(psi < 1.0);
    CHECK(rows[r][2] == (psi >= 0.5 ? "1" : "0"));
  }
}

TEST_CASE("predict aligns columns by name and accepts unlabelled data") {
  const fs::path dir = scratch("align");
  write_text(dir / "train.csv",
             "a,b,label\n0.1,5,0\n0.4,6,0\n-0.3,4,0\n0.2,5.5,0\n2.1,5,1\n2.5,4.5,1\n1.9,6,1\n"
             "2.2,5.2,1\n");
  write_text(dir / "new.csv", "b,a\n5,2.3\n5,0.0\n");
  REQUIRE(run_cli({"fit", "--train", (dir / "train.csv").string(), "--c", "1", "--out",
                   (dir / "m.json").string()})
              .code == 0);
  const Outcome o = run_cli({"predict", "--model", (dir / "m.json").string(), "--data",
                             (dir / "new.csv").string()});
  REQUIRE(o.code == 0);
  const auto rows = csv_rows(o.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"row", "psi", "predicted"});
  CHECK(std::stod(rows[1][1]) > std::stod(rows[2][1]));
  write_text(dir / "missing.csv", "b\n5\n");
  CHECK(run_cli({"predict", "--model", (dir / "m.json").string(), "--data",
                 (dir / "missing.csv").string()})
            .code == 1);
}

TEST_CASE("bf matches the dense oracle") {
  const fs::path dir = scratch("bf");
  const std::vector<double> x{-1.2, 0.3, 0.8, 2.5, -0.4, 1.1, 0.05, -2.0, 0.6, 1.7};
  const std::vector<double> same(10, 3.25);
  const std::vector<int> y{0, 1, 1, 1, 0, 1, 0, 0, 1, 0};
  std::ostringstream csv;
  csv.precision(17);
  csv << "x,flat,group\n";
  for (std::size_t i = 0; i < x.size(); ++i) csv << x[i] << ',' << same[i] << ',' << y[i] << '\n';
  write_text(dir / "bf.csv", csv.str());

  auto centring = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double e : v) mean += e;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double e : v) ss += (e - mean) * (e - mean);
    return std::pair{mean, std::max(std::sqrt(ss / static_cast<double>(v.size() - 1)), 1e-8)};
  };
  for (double c : {0.5, 1.0, 20.0}) {
    std::ostringstream cs;
    cs << c;
    const Outcome o = run_cli({"bf", "--data", (dir / "bf.csv").string(), "--c", cs.str()});
    REQUIRE(o.code == 0);
    const auto rows = csv_rows(o.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"variable", "log_bf"});
    const int depth = 3;  // floor(log2 10)
    const auto [mx, sx] = centring(x);
    const auto [ms, ss] = centring(same);
    CAPTURE(c);
    CHECK(rows[1][0] == "x");
    CHECK(std::abs(std::stod(rows[1][1]) - oracle::dense_log_bf(x, y, depth, mx, sx, c)) <= 1e-10);
    CHECK(rows[2][0] == "flat");
    CHECK(std::abs(std::stod(rows[2][1]) - oracle::dense_log_bf(same, y, depth, ms, ss, c)) <=
          1e-10);
  }
}

TEST_CASE("options from a config file or VNPDA_CONFIG match the command line") {
  const std::string train = (small_data() / "train.csv").string();
  const fs::path dir = scratch("config");
  write_text(dir / "opts.toml", "threads = 2\n[bf]\nc = 2.5\ndepth = 4\n");
  const Outcome direct = run_cli({"bf", "--data", train, "--c", "2.5", "--depth", "4"});
  REQUIRE(direct.code == 0);
  const Outcome defaults = run_cli({"bf", "--data", train});
  REQUIRE(defaults.code == 0);
  CHECK(direct.out != defaults.out);

  const Outcome from_file =
      run_cli({"--config", (dir / "opts.toml").string(), "bf", "--data", train});
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out == direct.out);

  REQUIRE(::setenv("VNPDA_CONFIG", (dir / "opts.toml").c_str(), 1) == 0);
  const Outcome from_env = run_cli({"bf", "--data", train});
  ::unsetenv("VNPDA_CONFIG");
  REQUIRE(from_env.code == 0);
  CHECK(from_env.out == direct.out);

  const Outcome missing = run_cli({"--config", (dir / "none.toml").string(), "bf", "--data", train});
  CHECK(missing.code == 1);
}
