#include "turbofan/surrogate.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "turbofan/csv.hpp"
#include "turbofan/errors.hpp"
#include "turbofan/rng.hpp"

namespace turbofan {

void MlpModel::check_shapes() const {
    if (dims.size() < 2) throw ConfigError("network needs at least two layers");
    for (int d : dims)
        if (d <= 0) throw ConfigError("layer widths must be positive");
    std::size_t nl = dims.size() - 1;
    if (W.size() != nl || b.size() != nl)
        throw ConfigError("layer count does not match dims");
    for (std::size_t i = 0; i < nl; ++i) {
        std::size_t out = static_cast<std::size_t>(dims[i + 1]);
        std::size_t in = static_cast<std::size_t>(dims[i]);
        if (W[i].size() != out * in || b[i].size() != out)
            throw ConfigError("weight shapes do not match dims");
    }
    if (input_scaling.size() != static_cast<std::size_t>(dims.front()))
        throw ConfigError("input scaling length does not match input width");
    for (const auto& [lo, hi] : input_scaling)
        if (!(hi > lo)) throw ConfigError("degenerate input scaling");
}

double relu(double x) { return x > 0.0 ? x : 0.0; }

MlpModel init_model(const std::vector<int>& dims, std::uint64_t seed,
                    const std::vector<std::pair<double, double>>& input_scaling,
                    const std::string& target_name) {
    MlpModel m;
    m.dims = dims;
    m.input_scaling = input_scaling;
    m.target_name = target_name;
    rng::Engine g(seed);
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        std::size_t out = static_cast<std::size_t>(dims[i + 1]);
        std::size_t in = static_cast<std::size_t>(dims[i]);
        double scale = std::sqrt(2.0 / static_cast<double>(in));
        std::vector<double> w(out * in);
        for (double& x : w) x = rng::normal(g) * scale;
        m.W.push_back(std::move(w));
        m.b.push_back(std::vector<double>(out, 0.0));
    }
    m.check_shapes();
    return m;
}

std::vector<double> forward_batch(const MlpModel& m, const DataMatrix& X,
                                  std::vector<DataMatrix>* acts) {
    if (X.cols != static_cast<std::size_t>(m.dims.front()))
        throw ConfigError("sample width does not match network input");
    if (acts) {
        acts->clear();
        acts->push_back(X);
    }
    DataMatrix a = X;
    std::size_t nl = m.dims.size() - 1;
    for (std::size_t l = 0; l < nl; ++l) {
        std::size_t out = static_cast<std::size_t>(m.dims[l + 1]);
        std::size_t in = static_cast<std::size_t>(m.dims[l]);
        DataMatrix z(a.rows, out);
        const double* Wl = m.W[l].data();
        for (std::size_t i = 0; i < a.rows; ++i) {
            const double* ai = a.row(i);
            double* zi = z.row(i);
            for (std::size_t o = 0; o < out; ++o) {
                const double* w = Wl + o * in;
                double acc = m.b[l][o];
                for (std::size_t k = 0; k < in; ++k) acc += w[k] * ai[k];
                zi[o] = l + 1 == nl ? acc : relu(acc);
            }
        }
        a = std::move(z);
        if (acts) acts->push_back(a);
    }
    std::vector<double> pred(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i) pred[i] = a.at(i, 0);
    return pred;
}

double predict(const MlpModel& m, const std::vector<double>& x_raw) {
    if (x_raw.size() != m.input_scaling.size())
        throw ConfigError("sample width does not match network input");
    DataMatrix X(1, x_raw.size());
    for (std::size_t j = 0; j < x_raw.size(); ++j) {
        auto [lo, hi] = m.input_scaling[j];
        if (x_raw[j] < lo || x_raw[j] > hi)
            std::fprintf(stderr,
                         "warning: feature %zu = %g outside training range "
                         "[%g, %g]; extrapolating\n",
                         j, x_raw[j], lo, hi);
        X.at(0, j) = (x_raw[j] - lo) / (hi - lo);
    }
    return forward_batch(m, X).front();
}

double mse(const std::vector<double>& y, const std::vector<double>& yhat) {
    if (y.size() != yhat.size() || y.empty())
        throw ConfigError("loss inputs differ in length or are empty");
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double d = yhat[i] - y[i];
        s += d * d;
    }
    return s / static_cast<double>(y.size());
}

Gradients backprop(const MlpModel& m, const DataMatrix& X_norm,
                   const std::vector<double>& y) {
    if (y.size() != X_norm.rows)
        throw ConfigError("target length does not match batch");
    if (m.dims.back() != 1)
        throw ConfigError("gradient assumes a single output neuron");
    std::vector<DataMatrix> acts;
    forward_batch(m, X_norm, &acts);
    std::size_t nl = m.dims.size() - 1;
    std::size_t n = X_norm.rows;

    Gradients g;
    g.W.resize(nl);
    g.b.resize(nl);

    // delta starts as d(loss)/d(z_last), one column per output neuron
    DataMatrix delta(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        delta.at(i, 0) = (2.0 / static_cast<double>(n)) *
                         (acts[nl].at(i, 0) - y[i]);

    for (std::size_t l = nl; l-- > 0;) {
        std::size_t out = static_cast<std::size_t>(m.dims[l + 1]);
        std::size_t in = static_cast<std::size_t>(m.dims[l]);
        g.W[l].assign(out * in, 0.0);
        g.b[l].assign(out, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double* di = delta.row(i);
            const double* ai = acts[l].row(i);
            for (std::size_t o = 0; o < out; ++o) {
                double d = di[o];
                g.b[l][o] += d;
                double* gw = g.W[l].data() + o * in;
                for (std::size_t k = 0; k < in; ++k) gw[k] += d * ai[k];
            }
        }
        if (l > 0) {
            DataMatrix nd(n, in);
            const double* Wl = m.W[l].data();
            for (std::size_t i = 0; i < n; ++i) {
                const double* di = delta.row(i);
                double* ni = nd.row(i);
                for (std::size_t o = 0; o < out; ++o) {
                    double d = di[o];
                    const double* w = Wl + o * in;
                    for (std::size_t k = 0; k < in; ++k) ni[k] += d * w[k];
                }
                const double* ai = acts[l].row(i);
                for (std::size_t k = 0; k < in; ++k)
                    if (!(ai[k] > 0.0)) ni[k] = 0.0;
            }
            delta = std::move(nd);
        }
    }
    return g;
}

AdamState AdamState::for_model(const MlpModel& m, double lr) {
    AdamState s;
    s.lr = lr;
    for (std::size_t i = 0; i < m.W.size(); ++i) {
        s.mW.push_back(std::vector<double>(m.W[i].size(), 0.0));
        s.vW.push_back(std::vector<double>(m.W[i].size(), 0.0));
        s.mb.push_back(std::vector<double>(m.b[i].size(), 0.0));
        s.vb.push_back(std::vector<double>(m.b[i].size(), 0.0));
    }
    return s;
}

void adam_step(AdamState& s, MlpModel& m, const Gradients& g) {
    ++s.t;
    double c1 = 1.0 - std::pow(s.beta1, static_cast<double>(s.t));
    double c2 = 1.0 - std::pow(s.beta2, static_cast<double>(s.t));
    auto update = [&](std::vector<double>& w, std::vector<double>& mo,
                      std::vector<double>& vo, const std::vector<double>& gr) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            mo[j] = s.beta1 * mo[j] + (1.0 - s.beta1) * gr[j];
            vo[j] = s.beta2 * vo[j] + (1.0 - s.beta2) * gr[j] * gr[j];
            w[j] -= s.lr * (mo[j] / c1) / std::sqrt(vo[j] / c2 + s.eps);
        }
    };
    for (std::size_t l = 0; l < m.W.size(); ++l) {
        update(m.W[l], s.mW[l], s.vW[l], g.W[l]);
        update(m.b[l], s.mb[l], s.vb[l], g.b[l]);
    }
}

TrainResult train(const DataMatrix& X_raw, const std::vector<double>& y,
                  const std::vector<int>& dims,
                  const std::vector<std::pair<double, double>>& input_scaling,
                  const std::string& target_name, const TrainConfig& cfg) {
    if (X_raw.rows == 0) throw ConfigError("no training samples");
    if (y.size() != X_raw.rows)
        throw ConfigError("target length does not match sample count");
    if (cfg.epochs < 0 || cfg.batch_size <= 0)
        throw ConfigError("epochs must be >= 0 and batch size > 0");

    MlpModel model = init_model(dims, cfg.seed, input_scaling, target_name);
    if (X_raw.cols != static_cast<std::size_t>(dims.front()))
        throw ConfigError("sample width does not match network input");

    DataMatrix X(X_raw.rows, X_raw.cols);
    for (std::size_t i = 0; i < X_raw.rows; ++i)
        for (std::size_t j = 0; j < X_raw.cols; ++j) {
            auto [lo, hi] = input_scaling[j];
            X.at(i, j) = (X_raw.at(i, j) - lo) / (hi - lo);
        }

    AdamState adam = AdamState::for_model(model, cfg.lr);
    rng::Engine shuffle(cfg.seed + 1000);

    TrainResult res;
    auto full_loss = [&] { return mse(y, forward_batch(model, X)); };
    res.loss_history.push_back(full_loss());

    std::size_t n = X.rows;
    std::size_t bsz = static_cast<std::size_t>(cfg.batch_size);
    for (int ep = 0; ep < cfg.epochs; ++ep) {
        std::vector<std::size_t> order = rng::permutation(shuffle, n);
        for (std::size_t s0 = 0; s0 < n; s0 += bsz) {
            std::size_t bn = std::min(bsz, n - s0);
            DataMatrix Xb(bn, X.cols);
            std::vector<double> yb(bn);
            for (std::size_t i = 0; i < bn; ++i) {
                std::size_t src = order[s0 + i];
                for (std::size_t j = 0; j < X.cols; ++j)
                    Xb.at(i, j) = X.at(src, j);
                yb[i] = y[src];
            }
            Gradients g = backprop(model, Xb, yb);
            adam_step(adam, model, g);
        }
        double loss = full_loss();
        if (!std::isfinite(loss))
            throw SolverError("training diverged: loss is not finite after epoch " +
                              std::to_string(ep + 1));
        res.loss_history.push_back(loss);
    }
    res.model = std::move(model);
    return res;
}

void save_model(const std::string& path, const MlpModel& m) {
    m.check_shapes();
    std::ostringstream out;
    out << "mlp-checkpoint v1\n";
    out << "target " << m.target_name << '\n';
    out << "dims " << m.dims.size();
    for (int d : m.dims) out << ' ' << d;
    out << '\n';
    out << "scaling\n";
    for (const auto& [lo, hi] : m.input_scaling)
        out << g17(lo) << ' ' << g17(hi) << '\n';
    for (std::size_t l = 0; l < m.W.size(); ++l) {
        out << "layer " << l << '\n';
        std::size_t in = static_cast<std::size_t>(m.dims[l]);
        for (std::size_t o = 0; o < m.b[l].size(); ++o) {
            const double* w = m.W[l].data() + o * in;
            for (std::size_t k = 0; k < in; ++k)
                out << (k ? " " : "") << g17(w[k]);
            out << '\n';
        }
        for (std::size_t o = 0; o < m.b[l].size(); ++o)
            out << (o ? " " : "") << g17(m.b[l][o]);
        out << '\n';
    }
    write_file(path, out.str());
}

MlpModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || strip(line) != "mlp-checkpoint v1")
        throw ConfigError(path + ": not a recognized checkpoint");
    MlpModel m;
    std::string word;
    if (!(in >> word) || word != "target" || !(in >> m.target_name))
        throw ConfigError(path + ": missing target");
    std::size_t ndims = 0;
    if (!(in >> word) || word != "dims" || !(in >> ndims) || ndims < 2 ||
        ndims > 64)
        throw ConfigError(path + ": bad dims header");
    m.dims.resize(ndims);
    for (std::size_t i = 0; i < ndims; ++i)
        if (!(in >> m.dims[i])) throw ConfigError(path + ": truncated dims");
    if (!(in >> word) || word != "scaling")
        throw ConfigError(path + ": missing scaling");
    m.input_scaling.resize(static_cast<std::size_t>(m.dims.front()));
    for (auto& [lo, hi] : m.input_scaling)
        if (!(in >> lo >> hi)) throw ConfigError(path + ": truncated scaling");
    for (std::size_t l = 0; l + 1 < ndims; ++l) {
        std::size_t idx = 0;
        if (!(in >> word) || word != "layer" || !(in >> idx) || idx != l)
            throw ConfigError(path + ": bad layer header");
        std::size_t out = static_cast<std::size_t>(m.dims[l + 1]);
        std::size_t in_w = static_cast<std::size_t>(m.dims[l]);
        std::vector<double> w(out * in_w);
        for (double& x : w)
            if (!(in >> x)) throw ConfigError(path + ": truncated weights");
        std::vector<double> b(out);
        for (double& x : b)
            if (!(in >> x)) throw ConfigError(path + ": truncated biases");
        m.W.push_back(std::move(w));
        m.b.push_back(std::move(b));
    }
    m.check_shapes();
    return m;
}

} // namespace turbofan
