#include "qrc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qrc {

using nlohmann::json;

namespace {

json task_to_json(const TaskConfig& t) {
    return json{{"type", t.type},         {"delay", t.delay},
                {"fade", t.fade},         {"train", t.train},
                {"test", t.test},         {"dt_internal", t.dt_internal},
                {"n_fade", t.n_fade},     {"n_train", t.n_train},
                {"n_test", t.n_test},     {"n_ss", t.n_ss},
                {"omega_ss", t.omega_ss}, {"seed", t.seed}};
}

TaskConfig task_from_json(const json& j) {
    TaskConfig t;
    t.type = j.value("type", t.type);
    t.delay = j.value("delay", t.delay);
    t.fade = j.value("fade", t.fade);
    t.train = j.value("train", t.train);
    t.test = j.value("test", t.test);
    t.dt_internal = j.value("dt_internal", t.dt_internal);
    t.n_fade = j.value("n_fade", t.n_fade);
    t.n_train = j.value("n_train", t.n_train);
    t.n_test = j.value("n_test", t.n_test);
    t.n_ss = j.value("n_ss", t.n_ss);
    t.omega_ss = j.value("omega_ss", t.omega_ss);
    t.seed = j.value("seed", t.seed);
    return t;
}

} // namespace

std::string ExperimentConfig::canonical_json() const {
    json j;
    j["name"] = name;
    j["task"] = task_to_json(task);
    j["reservoir"] = {{"n_atom", reservoir.n_atom},   {"n_fock", reservoir.n_fock},
                      {"omega_c", reservoir.omega_c}, {"omega", reservoir.omega},
                      {"g", reservoir.g},             {"epsilon", reservoir.epsilon},
                      {"kappa", reservoir.kappa}};
    j["feedback"] = {{"channels", feedback.channels},
                     {"weights", feedback.weights},
                     {"optimizer", feedback.optimizer},
                     {"bound_lo", feedback.bound_lo},
                     {"bound_hi", feedback.bound_hi},
                     {"grid_step", feedback.grid_step},
                     {"scan_n_fock", feedback.scan_n_fock},
                     {"refine_n_fock", feedback.refine_n_fock},
                     {"rescore_top_k", feedback.rescore_top_k},
                     {"de_maxiter", feedback.de_maxiter},
                     {"de_batches", feedback.de_batches}};
    j["regression"] = regression;
    j["delta"] = delta;
    j["evolution"] = {{"scheme", evolution.scheme},
                      {"trajectories", evolution.trajectories},
                      {"substeps", evolution.substeps},
                      {"stochastic_substeps", evolution.stochastic_substeps},
                      {"auto_substeps", evolution.auto_substeps}};
    j["esn"] = {{"n_neuron", esn.n_neuron},
                {"n_measured", esn.n_measured},
                {"diagonal_only", esn.diagonal_only},
                {"n_networks", esn.n_networks}};
    j["seed"] = seed;
    j["traces"] = traces;
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse failure: ") + e.what());
    }
    try {
        ExperimentConfig c;
        c.name = j.value("name", c.name);
        if (j.contains("task")) c.task = task_from_json(j["task"]);
        if (j.contains("reservoir")) {
            const json& r = j["reservoir"];
            c.reservoir.n_atom = r.value("n_atom", c.reservoir.n_atom);
            c.reservoir.n_fock = r.value("n_fock", c.reservoir.n_fock);
            c.reservoir.omega_c = r.value("omega_c", c.reservoir.omega_c);
            c.reservoir.omega = r.value("omega", c.reservoir.omega);
            c.reservoir.g = r.value("g", c.reservoir.g);
            c.reservoir.epsilon = r.value("epsilon", c.reservoir.epsilon);
            c.reservoir.kappa = r.value("kappa", c.reservoir.kappa);
        }
        if (j.contains("feedback")) {
            const json& f = j["feedback"];
            c.feedback.channels = f.value("channels", c.feedback.channels);
            c.feedback.weights = f.value("weights", c.feedback.weights);
            c.feedback.optimizer = f.value("optimizer", c.feedback.optimizer);
            c.feedback.bound_lo = f.value("bound_lo", c.feedback.bound_lo);
            c.feedback.bound_hi = f.value("bound_hi", c.feedback.bound_hi);
            c.feedback.grid_step = f.value("grid_step", c.feedback.grid_step);
            c.feedback.scan_n_fock = f.value("scan_n_fock", c.feedback.scan_n_fock);
            c.feedback.refine_n_fock = f.value("refine_n_fock", c.feedback.refine_n_fock);
            c.feedback.rescore_top_k = f.value("rescore_top_k", c.feedback.rescore_top_k);
            c.feedback.de_maxiter = f.value("de_maxiter", c.feedback.de_maxiter);
            c.feedback.de_batches = f.value("de_batches", c.feedback.de_batches);
        }
        c.regression = j.value("regression", c.regression);
        c.delta = j.value("delta", c.delta);
        if (j.contains("evolution")) {
            const json& e = j["evolution"];
            c.evolution.scheme = e.value("scheme", c.evolution.scheme);
            c.evolution.trajectories = e.value("trajectories", c.evolution.trajectories);
            c.evolution.substeps = e.value("substeps", c.evolution.substeps);
            c.evolution.stochastic_substeps =
                e.value("stochastic_substeps", c.evolution.stochastic_substeps);
            c.evolution.auto_substeps = e.value("auto_substeps", c.evolution.auto_substeps);
        }
        if (j.contains("esn")) {
            const json& e = j["esn"];
            c.esn.n_neuron = e.value("n_neuron", c.esn.n_neuron);
            c.esn.n_measured = e.value("n_measured", c.esn.n_measured);
            c.esn.diagonal_only = e.value("diagonal_only", c.esn.diagonal_only);
            c.esn.n_networks = e.value("n_networks", c.esn.n_networks);
        }
        c.seed = j.value("seed", c.seed);
        c.traces = j.value("traces", c.traces);
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

void ExperimentConfig::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config " + path);
    out << canonical_json() << "\n";
}

// ------------------------------------------------------------------- csv

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

void emit_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "config,segment,nrmse,wall_seconds,seed,axis,note\n";
    for (const auto& r : table.rows) {
        out << csv_escape(r.config_id) << ',' << r.segment << ',' << fmt17(r.nrmse) << ','
            << fmt17(r.wall_seconds) << ',' << r.seed << ',' << fmt17(r.axis) << ','
            << csv_escape(r.note) << '\n';
    }
    if (!out) throw IoError("write failure on " + path);
}

ResultTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty csv " + path);
    ResultTable table;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 7) throw IoError("malformed csv row in " + path);
        ResultRow r;
        r.config_id = f[0];
        r.segment = f[1];
        r.nrmse = std::stod(f[2]);
        r.wall_seconds = std::stod(f[3]);
        r.seed = std::stoull(f[4]);
        r.axis = std::stod(f[5]);
        r.note = f[6];
        table.rows.push_back(std::move(r));
    }
    return table;
}

void emit_trace_csv(const TraceSeries& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "k,t,f,f_modified,target,actual,split\n";
    for (std::size_t k = 0; k < trace.t.size(); ++k) {
        auto opt = [&](const std::vector<double>& v) {
            return k < v.size() ? fmt17(v[k]) : std::string();
        };
        out << k << ',' << fmt17(trace.t[k]) << ',' << opt(trace.input) << ','
            << opt(trace.modified) << ',' << opt(trace.target) << ',' << opt(trace.actual)
            << ',' << (k < trace.split.size() ? std::to_string(trace.split[k]) : std::string())
            << '\n';
    }
    if (!out) throw IoError("write failure on " + path);
}

void emit_task_csv(const TaskDataset& task, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "k,t,f,target,split\n";
    for (std::size_t k = 0; k < task.size(); ++k) {
        const int split = k < task.fade_end ? 0 : (k < task.train_end ? 1 : 2);
        out << k << ',' << fmt17(static_cast<double>(k) * task.dt) << ','
            << fmt17(task.inputs[k]) << ',' << fmt17(task.targets[k]) << ',' << split
            << '\n';
    }
    if (!out) throw IoError("write failure on " + path);
}

// ------------------------------------------------------------------- svg

namespace {

double nice_tick(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double nice = 10.0;
    if (frac <= 1.5) nice = 1.0;
    else if (frac <= 3.0) nice = 2.0;
    else if (frac <= 7.0) nice = 5.0;
    return nice * mag;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

void emit_svg(const std::vector<SvgSeries>& series, const SvgOptions& opts,
              const std::string& path) {
    const double width = 900, height = 520;
    const double ml = 70, mr = 160, mt = 40, mb = 55;

    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double x = s.x[i], y = s.y[i];
            if (opts.log_x) x = std::log10(std::max(x, 1e-300));
            if (opts.log_y) y = std::log10(std::max(y, 1e-300));
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (first) {
                xlo = xhi = x;
                ylo = yhi = y;
                first = false;
            }
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    }
    if (xhi <= xlo) xhi = xlo + 1.0;
    if (yhi <= ylo) yhi = ylo + 1.0;
    const double ypad = 0.06 * (yhi - ylo);
    ylo -= ypad;
    yhi += ypad;

    auto px = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - ylo) / (yhi - ylo) * (height - mt - mb); };

    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(opts.title)
        << "</text>\n";

    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";

    const double xt = nice_tick(xhi - xlo), yt = nice_tick(yhi - ylo);
    for (double x = std::ceil(xlo / xt) * xt; x <= xhi + 1e-12; x += xt) {
        out << "<line x1=\"" << px(x) << "\" y1=\"" << height - mb << "\" x2=\"" << px(x)
            << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
        char label[48];
        std::snprintf(label, sizeof(label), "%g", opts.log_x ? std::pow(10.0, x) : x);
        out << "<text x=\"" << px(x) << "\" y=\"" << height - mb + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << label << "</text>\n";
    }
    for (double y = std::ceil(ylo / yt) * yt; y <= yhi + 1e-12; y += yt) {
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(y) << "\" x2=\"" << ml
            << "\" y2=\"" << py(y) << "\" stroke=\"black\"/>\n";
        char label[48];
        std::snprintf(label, sizeof(label), "%g", opts.log_y ? std::pow(10.0, y) : y);
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << label
            << "</text>\n";
    }
    out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(opts.x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << (mt + height - mb) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << (mt + height - mb) / 2 << ")\">"
        << xml_escape(opts.y_label) << "</text>\n";

    int legend_row = 0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double x = s.x[i], y = s.y[i];
            if (opts.log_x) x = std::log10(std::max(x, 1e-300));
            if (opts.log_y) y = std::log10(std::max(y, 1e-300));
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            char pt[64];
            std::snprintf(pt, sizeof(pt), "%.6g,%.6g ", px(x), py(y));
            out << pt;
        }
        out << "\"/>\n";
        const double ly = mt + 16.0 * legend_row++;
        out << "<line x1=\"" << width - mr + 10 << "\" y1=\"" << ly + 8 << "\" x2=\""
            << width - mr + 34 << "\" y2=\"" << ly + 8 << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << width - mr + 40 << "\" y=\"" << ly + 12
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(s.label)
            << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw IoError("write failure on " + path);
}

} // namespace qrc
