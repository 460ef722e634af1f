#include "ltlmod/nn/mlp.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "ltlmod/nn/kernels.hpp"

namespace ltlmod {

Mlp::Mlp(std::vector<int> sizes, Head head, std::vector<double> head_lo,
         std::vector<double> head_hi)
    : sizes_(std::move(sizes)), head_(head), head_lo_(std::move(head_lo)),
      head_hi_(std::move(head_hi)) {
    if (sizes_.size() < 2) throw std::invalid_argument("network needs at least one layer");
    if (head_ == Head::bounded &&
        (head_lo_.size() != static_cast<size_t>(sizes_.back()) ||
         head_hi_.size() != static_cast<size_t>(sizes_.back())))
        throw std::invalid_argument("head bounds must match the output dimension");
    for (size_t l = 0; l + 1 < sizes_.size(); ++l) {
        w_.emplace_back(static_cast<size_t>(sizes_[l + 1]) * sizes_[l], 0.0);
        b_.emplace_back(sizes_[l + 1], 0.0);
    }
}

Mlp Mlp::xavier(std::vector<int> sizes, Head head, std::vector<double> head_lo,
                std::vector<double> head_hi, Rng& rng) {
    Mlp net(std::move(sizes), head, std::move(head_lo), std::move(head_hi));
    for (size_t l = 0; l < net.w_.size(); ++l) {
        const double limit = std::sqrt(6.0 / (net.sizes_[l] + net.sizes_[l + 1]));
        for (auto& v : net.w_[l]) v = rng.uniform(-limit, limit);
    }
    return net;
}

const std::vector<double>& Mlp::forward(const std::vector<double>& input,
                                        Workspace& ws) const {
    if (static_cast<int>(input.size()) != sizes_.front())
        throw std::invalid_argument("input dimension mismatch: got " +
                                    std::to_string(input.size()) + ", expected " +
                                    std::to_string(sizes_.front()));
    const auto& k = kern::ops();
    const int L = num_layers();
    ws.pre.resize(L);
    ws.act.resize(L + 1);
    ws.act[0] = input;
    for (int l = 0; l < L; ++l) {
        const int rows = sizes_[l + 1], cols = sizes_[l];
        ws.pre[l].resize(rows);
        k.matvec(w_[l].data(), ws.act[l].data(), b_[l].data(), ws.pre[l].data(), rows, cols);
        ws.act[l + 1].resize(rows);
        if (l + 1 < L) {
            k.tanh_vec(ws.pre[l].data(), ws.act[l + 1].data(), rows);
        } else if (head_ == Head::identity) {
            ws.act[l + 1] = ws.pre[l];
        } else {
            k.tanh_vec(ws.pre[l].data(), ws.act[l + 1].data(), rows);
            for (int i = 0; i < rows; ++i)
                ws.act[l + 1][i] = head_lo_[i] +
                                   (ws.act[l + 1][i] + 1.0) * 0.5 * (head_hi_[i] - head_lo_[i]);
        }
    }
    return ws.act[L];
}

void Mlp::Grad::zero() {
    for (auto& t : w) std::fill(t.begin(), t.end(), 0.0);
    for (auto& t : b) std::fill(t.begin(), t.end(), 0.0);
}

Mlp::Grad Mlp::make_grad() const {
    Grad g;
    for (size_t l = 0; l < w_.size(); ++l) {
        g.w.emplace_back(w_[l].size(), 0.0);
        g.b.emplace_back(b_[l].size(), 0.0);
    }
    return g;
}

void Mlp::backward(const Workspace& ws, const std::vector<double>& doutput, Grad* grad,
                   std::vector<double>* dinput) const {
    const auto& k = kern::ops();
    const int L = num_layers();
    std::vector<double> delta(doutput);

    // head
    if (head_ == Head::bounded) {
        const int rows = sizes_.back();
        std::vector<double> th(rows);
        k.tanh_vec(ws.pre[L - 1].data(), th.data(), rows);
        for (int i = 0; i < rows; ++i)
            delta[i] *= 0.5 * (head_hi_[i] - head_lo_[i]) * (1.0 - th[i] * th[i]);
    }

    for (int l = L - 1; l >= 0; --l) {
        const int rows = sizes_[l + 1], cols = sizes_[l];
        if (l < L - 1) {
            // delta currently holds dL/d(act); convert through tanh
            std::vector<double> dz(rows);
            k.tanh_backward(ws.act[l + 1].data(), delta.data(), dz.data(), rows);
            delta.swap(dz);
        }
        if (grad) {
            k.ger_acc(grad->w[l].data(), delta.data(), ws.act[l].data(), rows, cols);
            for (int i = 0; i < rows; ++i) grad->b[l][i] += delta[i];
        }
        if (l > 0 || dinput) {
            std::vector<double> dprev(cols, 0.0);
            k.matvec_t_acc(w_[l].data(), delta.data(), dprev.data(), rows, cols);
            if (l == 0) {
                *dinput = std::move(dprev);
                return;
            }
            delta.swap(dprev);
        }
    }
}

bool Mlp::same_architecture(const Mlp& o) const {
    return sizes_ == o.sizes_ && head_ == o.head_ && head_lo_ == o.head_lo_ &&
           head_hi_ == o.head_hi_;
}

bool Mlp::finite() const {
    for (const auto& t : w_)
        for (double v : t)
            if (!std::isfinite(v)) return false;
    for (const auto& t : b_)
        for (double v : t)
            if (!std::isfinite(v)) return false;
    return true;
}

namespace {
constexpr uint32_t kMagic = 0x4C4D5731; // "LMW1"
constexpr uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw WeightIoError("weight file truncated");
    return v;
}

void write_doubles(std::ostream& out, const std::vector<double>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void read_doubles(std::istream& in, std::vector<double>& v) {
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!in) throw WeightIoError("weight file truncated");
}
} // namespace

void Mlp::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw WeightIoError("cannot open for writing: " + path);
    write_pod(out, kMagic);
    write_pod(out, kVersion);
    write_pod(out, static_cast<uint32_t>(head_));
    write_pod(out, static_cast<uint32_t>(sizes_.size()));
    for (int s : sizes_) write_pod(out, static_cast<uint32_t>(s));
    write_pod(out, static_cast<uint32_t>(head_lo_.size()));
    write_doubles(out, head_lo_);
    write_doubles(out, head_hi_);
    for (size_t l = 0; l < w_.size(); ++l) {
        write_doubles(out, w_[l]);
        write_doubles(out, b_[l]);
    }
    if (!out) throw WeightIoError("short write: " + path);
}

Mlp Mlp::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw WeightIoError("cannot open weight file: " + path);
    if (read_pod<uint32_t>(in) != kMagic) throw WeightIoError("not a weight file: " + path);
    const uint32_t version = read_pod<uint32_t>(in);
    if (version != kVersion)
        throw WeightIoError("unsupported weight file version " + std::to_string(version));
    const auto head = static_cast<Head>(read_pod<uint32_t>(in));
    const uint32_t nsizes = read_pod<uint32_t>(in);
    if (nsizes < 2 || nsizes > 64) throw WeightIoError("corrupt weight file: layer count");
    std::vector<int> sizes(nsizes);
    for (auto& s : sizes) s = static_cast<int>(read_pod<uint32_t>(in));
    const uint32_t nbounds = read_pod<uint32_t>(in);
    std::vector<double> lo(nbounds), hi(nbounds);
    read_doubles(in, lo);
    read_doubles(in, hi);
    Mlp net(sizes, head, std::move(lo), std::move(hi));
    for (size_t l = 0; l < net.w_.size(); ++l) {
        read_doubles(in, net.w_[l]);
        read_doubles(in, net.b_[l]);
    }
    char extra;
    if (in.read(&extra, 1)) throw WeightIoError("trailing bytes in weight file: " + path);
    return net;
}

void soft_update(Mlp& target, const Mlp& source, double tau) {
    if (!target.same_architecture(source))
        throw std::invalid_argument("soft update across different architectures");
    const auto& k = kern::ops();
    for (size_t l = 0; l < target.weights().size(); ++l) {
        k.axpby(tau, source.weights()[l].data(), 1.0 - tau, target.weights()[l].data(),
                static_cast<int>(target.weights()[l].size()));
        k.axpby(tau, source.biases()[l].data(), 1.0 - tau, target.biases()[l].data(),
                static_cast<int>(target.biases()[l].size()));
    }
}

Adam::Adam(const Mlp& net, AdamParams params) : p_(params) {
    for (const auto& t : net.weights()) {
        mw_.emplace_back(t.size(), 0.0);
        vw_.emplace_back(t.size(), 0.0);
    }
    for (const auto& t : net.biases()) {
        mb_.emplace_back(t.size(), 0.0);
        vb_.emplace_back(t.size(), 0.0);
    }
}

void Adam::step(Mlp& net, const Mlp::Grad& grad) {
    ++t_;
    const double bias1 = 1.0 - std::pow(p_.beta1, static_cast<double>(t_));
    const double bias2 = 1.0 - std::pow(p_.beta2, static_cast<double>(t_));
    const auto& k = kern::ops();
    for (size_t l = 0; l < net.weights().size(); ++l) {
        k.adam_step(net.weights()[l].data(), grad.w[l].data(), mw_[l].data(), vw_[l].data(),
                    static_cast<int>(grad.w[l].size()), p_.lr, p_.beta1, p_.beta2, p_.eps,
                    bias1, bias2);
        k.adam_step(net.biases()[l].data(), grad.b[l].data(), mb_[l].data(), vb_[l].data(),
                    static_cast<int>(grad.b[l].size()), p_.lr, p_.beta1, p_.beta2, p_.eps,
                    bias1, bias2);
    }
}

} // namespace ltlmod
