#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace lexred {

// Dense two-layer net: in -> hidden (ReLU) -> out, softmax + cross-entropy.
// Templated on the scalar type: training and the finite-difference gradient
// check run in double, the serialized model runs in float.
template <typename T>
struct MlpParams {
    size_t in = 0, hidden = 0, out = 0;
    std::vector<T> w1; // hidden x in, row-major
    std::vector<T> b1; // hidden
    std::vector<T> w2; // out x hidden
    std::vector<T> b2; // out

    static MlpParams zeros(size_t in, size_t hidden, size_t out) {
        MlpParams p;
        p.in = in;
        p.hidden = hidden;
        p.out = out;
        p.w1.assign(hidden * in, T{0});
        p.b1.assign(hidden, T{0});
        p.w2.assign(out * hidden, T{0});
        p.b2.assign(out, T{0});
        return p;
    }

    size_t parameter_count() const { return w1.size() + b1.size() + w2.size() + b2.size(); }

    T* flat(size_t i) {
        if (i < w1.size()) return &w1[i];
        i -= w1.size();
        if (i < b1.size()) return &b1[i];
        i -= b1.size();
        if (i < w2.size()) return &w2[i];
        i -= w2.size();
        return &b2[i];
    }
};

// hidden activations and softmax probabilities for one sample
template <typename T>
void mlp_forward(const MlpParams<T>& p, const T* x, T* hidden, T* prob) {
    for (size_t j = 0; j < p.hidden; ++j) {
        T acc = p.b1[j];
        const T* row = p.w1.data() + j * p.in;
        for (size_t d = 0; d < p.in; ++d) acc += row[d] * x[d];
        hidden[j] = acc > T{0} ? acc : T{0};
    }
    T max_logit = T{0};
    for (size_t k = 0; k < p.out; ++k) {
        T acc = p.b2[k];
        const T* row = p.w2.data() + k * p.hidden;
        for (size_t j = 0; j < p.hidden; ++j) acc += row[j] * hidden[j];
        prob[k] = acc;
        if (k == 0 || acc > max_logit) max_logit = acc;
    }
    T z = T{0};
    for (size_t k = 0; k < p.out; ++k) {
        prob[k] = std::exp(prob[k] - max_logit);
        z += prob[k];
    }
    for (size_t k = 0; k < p.out; ++k) prob[k] /= z;
}

// Mean class-weighted cross-entropy over a batch:
//   L = (1/B) sum_i weight[label_i] * -log(prob_i[label_i])
// When grad is non-null, parameter gradients are accumulated into it
// (caller zeroes it first).
template <typename T>
T mlp_batch_loss(const MlpParams<T>& p, std::span<const T> inputs,
                 std::span<const uint32_t> labels, std::span<const T> class_weights,
                 MlpParams<T>* grad) {
    const size_t batch = labels.size();
    std::vector<T> hidden(p.hidden), prob(p.out), dlogit(p.out), dhidden(p.hidden);
    T loss = T{0};
    for (size_t i = 0; i < batch; ++i) {
        const T* x = inputs.data() + i * p.in;
        mlp_forward(p, x, hidden.data(), prob.data());
        const uint32_t y = labels[i];
        const T w = class_weights[y];
        const T eps = T{1e-12};
        loss += -w * std::log(prob[y] > eps ? prob[y] : eps);
        if (!grad) continue;

        const T scale = w / static_cast<T>(batch);
        for (size_t k = 0; k < p.out; ++k)
            dlogit[k] = scale * (prob[k] - (k == y ? T{1} : T{0}));
        for (size_t k = 0; k < p.out; ++k) {
            T* grow = grad->w2.data() + k * p.hidden;
            for (size_t j = 0; j < p.hidden; ++j) grow[j] += dlogit[k] * hidden[j];
            grad->b2[k] += dlogit[k];
        }
        for (size_t j = 0; j < p.hidden; ++j) {
            T acc = T{0};
            for (size_t k = 0; k < p.out; ++k) acc += p.w2[k * p.hidden + j] * dlogit[k];
            dhidden[j] = hidden[j] > T{0} ? acc : T{0};
        }
        for (size_t j = 0; j < p.hidden; ++j) {
            if (dhidden[j] == T{0}) continue;
            T* grow = grad->w1.data() + j * p.in;
            for (size_t d = 0; d < p.in; ++d) grow[d] += dhidden[j] * x[d];
            grad->b1[j] += dhidden[j];
        }
    }
    return loss / static_cast<T>(batch);
}

} // namespace lexred
