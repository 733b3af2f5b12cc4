#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "sgc/protocol.hpp"

namespace sgc {

namespace {

class TcpChannel : public ByteChannel {
  public:
    explicit TcpChannel(int fd) : fd_(fd) {
        int one = 1;
        setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    }
    ~TcpChannel() override { close(); }

    void close() override {
        if (fd_ >= 0) {
            ::shutdown(fd_, SHUT_RDWR);
            ::close(fd_);
            fd_ = -1;
        }
    }

  protected:
    void do_write(const uint8_t* data, size_t n) override {
        while (n > 0) {
            ssize_t w = ::send(fd_, data, n, MSG_NOSIGNAL);
            if (w < 0) {
                if (errno == EINTR) continue;
                throw TransportError(std::string("send: ") + std::strerror(errno));
            }
            data += w;
            n -= size_t(w);
        }
    }
    void do_read(uint8_t* data, size_t n) override {
        while (n > 0) {
            ssize_t r = ::recv(fd_, data, n, 0);
            if (r < 0) {
                if (errno == EINTR) continue;
                throw TransportError(std::string("recv: ") + std::strerror(errno));
            }
            if (r == 0) throw TransportError("connection closed by peer");
            data += r;
            n -= size_t(r);
        }
    }

  private:
    int fd_;
};

struct AddrInfo {
    addrinfo* res = nullptr;
    AddrInfo(const std::string& host, uint16_t port, bool passive) {
        addrinfo hints{};
        hints.ai_family = AF_UNSPEC;
        hints.ai_socktype = SOCK_STREAM;
        if (passive) hints.ai_flags = AI_PASSIVE;
        std::string port_s = std::to_string(port);
        int rc = getaddrinfo(host.empty() ? nullptr : host.c_str(), port_s.c_str(),
                             &hints, &res);
        if (rc != 0)
            throw TransportError("getaddrinfo(" + host + "): " + gai_strerror(rc));
    }
    ~AddrInfo() {
        if (res) freeaddrinfo(res);
    }
};

}  // namespace

std::unique_ptr<ByteChannel> tcp_listen_one(const std::string& host, uint16_t port) {
    AddrInfo ai(host, port, true);
    int srv = -1;
    for (addrinfo* p = ai.res; p; p = p->ai_next) {
        srv = ::socket(p->ai_family, p->ai_socktype, p->ai_protocol);
        if (srv < 0) continue;
        int one = 1;
        setsockopt(srv, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
        if (::bind(srv, p->ai_addr, p->ai_addrlen) == 0) break;
        ::close(srv);
        srv = -1;
    }
    if (srv < 0) throw TransportError("bind failed on port " + std::to_string(port));
    if (::listen(srv, 1) != 0) {
        ::close(srv);
        throw TransportError(std::string("listen: ") + std::strerror(errno));
    }
    int fd = ::accept(srv, nullptr, nullptr);
    ::close(srv);
    if (fd < 0) throw TransportError(std::string("accept: ") + std::strerror(errno));
    return std::make_unique<TcpChannel>(fd);
}

std::unique_ptr<ByteChannel> tcp_connect(const std::string& host, uint16_t port,
                                         int attempts) {
    for (int attempt = 0;; attempt++) {
        AddrInfo ai(host, port, false);
        for (addrinfo* p = ai.res; p; p = p->ai_next) {
            int fd = ::socket(p->ai_family, p->ai_socktype, p->ai_protocol);
            if (fd < 0) continue;
            if (::connect(fd, p->ai_addr, p->ai_addrlen) == 0)
                return std::make_unique<TcpChannel>(fd);
            ::close(fd);
        }
        if (attempt + 1 >= attempts)
            throw TransportError("connect to " + host + ":" + std::to_string(port) +
                                 " failed");
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
}

}  // namespace sgc
