var app = {
    initialize: function () {
        document.addEventListener('deviceready', this.onDeviceReady, false);
    },
    onDeviceReady: function () {
        document.getElementById('refresh').addEventListener('click', app.refreshDeviceList, false);
        app.refreshDeviceList();
    },
    refreshDeviceList: function () {
        bluetoothSerial.list(function (devices) {
            var names = [];
            for (var i = 0; i < devices.length; i++) {
                names.push(devices[i].name);
            }
            document.getElementById('deviceList').textContent = names.join(', ');
        }, app.onError);
    },
    onError: function (reason) {
        console.log('bluetooth error: ' + reason);
    }
};

app.initialize();
