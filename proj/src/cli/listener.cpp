#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "rvaft/cli.hpp"
#include "rvaft/error.hpp"

namespace rvaft::cli {

namespace {

[[noreturn]] void io_error(const std::string& what) {
  throw Error(ErrorKind::kIo, what + ": " + std::strerror(errno));
}

sockaddr_in loopback(std::uint16_t port) {
  sockaddr_in address{};
  address.sin_family = AF_INET;
  address.sin_port = htons(port);
  address.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  return address;
}

}  // namespace

LineListener::LineListener(std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) io_error("socket");
  int yes = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  auto address = loopback(port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&address), sizeof address) < 0) {
    ::close(fd_);
    io_error("bind port " + std::to_string(port));
  }
  if (::listen(fd_, 1) < 0) {
    ::close(fd_);
    io_error("listen");
  }
  socklen_t size = sizeof address;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&address), &size);
  port_ = ntohs(address.sin_port);
}

LineListener::~LineListener() {
  if (fd_ >= 0) ::close(fd_);
}

void LineListener::serve_one(const std::function<void(std::string_view)>& on_line) {
  int client = ::accept(fd_, nullptr, nullptr);
  if (client < 0) io_error("accept");
  std::string pending;
  char buffer[4096];
  while (true) {
    ssize_t n = ::recv(client, buffer, sizeof buffer, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(client);
      io_error("recv");
    }
    if (n == 0) break;
    pending.append(buffer, static_cast<std::size_t>(n));
    std::size_t start = 0;
    for (std::size_t nl; (nl = pending.find('\n', start)) != std::string::npos; start = nl + 1) {
      on_line(std::string_view(pending).substr(start, nl - start));
    }
    pending.erase(0, start);
  }
  ::close(client);
  if (!pending.empty()) on_line(pending);
}

void send_lines(std::uint16_t port, const std::vector<std::string>& lines) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) io_error("socket");
  auto address = loopback(port);
  if (::connect(fd, reinterpret_cast<sockaddr*>(&address), sizeof address) < 0) {
    ::close(fd);
    io_error("connect port " + std::to_string(port));
  }
  for (const auto& line : lines) {
    std::string framed = line + "\n";
    std::size_t sent = 0;
    while (sent < framed.size()) {
      ssize_t n = ::send(fd, framed.data() + sent, framed.size() - sent, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        ::close(fd);
        io_error("send");
      }
      sent += static_cast<std::size_t>(n);
    }
  }
  ::close(fd);
}

}  // namespace rvaft::cli
