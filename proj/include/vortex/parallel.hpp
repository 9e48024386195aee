// SPDX-License-Identifier: Apache-2.0
//
// vortex-uca: OAM radio links between non-coaxial uniform circular arrays
// ------------------------------------------------------------------------

#ifndef VORTEX_PARALLEL_HPP
#define VORTEX_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace vortex
{
    // Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
    // visited exactly once; results must be written to per-index slots. If bodies
    // throw, the exception of the lowest failing index is rethrown.
    template <typename Body>
    void parallel_for(std::size_t count, unsigned threads, Body &&body)
    {
        const std::size_t workers = std::min<std::size_t>(std::max(threads, 1u), count);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < count; ++i)
                body(i);
            return;
        }

        std::vector<std::exception_ptr> errors(count);
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back([&, w]
                                  {
                    for (std::size_t i = w; i < count; i += workers)
                    {
                        try
                        {
                            body(i);
                        }
                        catch (...)
                        {
                            errors[i] = std::current_exception();
                        }
                    } });
        }
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }
}

#endif
